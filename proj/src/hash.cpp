#include <openssl/evp.h>

#include <array>
#include <cstdio>

#include "turtlesyn/lang.hpp"
#include "turtlesyn/model.hpp"
#include "turtlesyn/taskio.hpp"

namespace tsyn {

std::string canonical_hash(const Task& task, const Program& code) {
  std::string payload = task_to_json(task);
  payload.push_back('\0');
  payload += print(code);

  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  EVP_Digest(payload.data(), payload.size(), digest.data(), &len, EVP_sha256(), nullptr);

  std::string hex(static_cast<size_t>(len) * 2, '0');
  for (unsigned int i = 0; i < len; ++i)
    std::snprintf(hex.data() + i * 2, 3, "%02x", digest[i]);
  return hex;
}

}  // namespace tsyn
