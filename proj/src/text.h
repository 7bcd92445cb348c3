// Small string helpers shared by the readers. Internal header.
#ifndef DISAMB_SRC_TEXT_H
#define DISAMB_SRC_TEXT_H

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace disamb::text {

std::string_view trim(std::string_view s);
std::vector<std::string_view> split_ws(std::string_view s);
std::vector<std::string_view> split(std::string_view s, char sep);
std::vector<std::string_view> lines(std::string_view s);
std::string lower(std::string_view s);
bool parse_uint(std::string_view s, std::uint64_t& out);
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);
bool file_exists(const std::string& path);

// FNV-1a, used as the model-file checksum.
std::uint64_t fnv1a(std::string_view data);

}  // namespace disamb::text

#endif  // DISAMB_SRC_TEXT_H
