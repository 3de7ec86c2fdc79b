#include "oor/checksum.hpp"

#include <openssl/evp.h>

#include "oor/csv_io.hpp"
#include "oor/errors.hpp"

namespace oor {

std::string sha256_hex(const std::string& data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw InvalidArgumentError("sha256 digest failed");
    static const char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

std::string sha256_file_hex(const std::filesystem::path& path) {
    return sha256_hex(read_text_file(path));
}

} // namespace oor
