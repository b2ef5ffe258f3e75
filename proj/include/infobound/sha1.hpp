#pragma once

#include <string>

namespace infobound {

// SHA-1 digest as lowercase hex.
std::string sha1_hex(const std::string& bytes);

// Git blob hash: sha1("blob <len>\0<content>").
std::string git_blob_hash(const std::string& content);

}  // namespace infobound
