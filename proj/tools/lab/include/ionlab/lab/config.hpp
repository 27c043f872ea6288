#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace ionlab::lab {

using ConfigEntries = std::vector<std::pair<std::string, std::string>>;

/// Reads a flat "key = value" file. Blank lines and lines starting with '#'
/// are skipped; keys may be written with or without the leading "--".
/// Throws std::invalid_argument on a malformed line or unreadable file.
ConfigEntries read_config(const std::filesystem::path& path);
ConfigEntries parse_config(const std::string& text);

/// Appends "--key value" for every entry whose flag is not already present in
/// `args`. Values "true"/"false" are treated as switches.
std::vector<std::string> merge_config(std::vector<std::string> args, const ConfigEntries& entries);

/// Parses "2,3,5-8" into {2,3,5,6,7,8}. Throws std::invalid_argument.
std::vector<int> parse_int_list(const std::string& spec);

}  // namespace ionlab::lab
