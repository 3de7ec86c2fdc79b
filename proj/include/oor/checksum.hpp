#pragma once

#include <filesystem>
#include <string>

namespace oor {

std::string sha256_hex(const std::string& data);
std::string sha256_file_hex(const std::filesystem::path& path);

} // namespace oor
