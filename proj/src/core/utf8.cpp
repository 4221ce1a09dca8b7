// Copyright 2026 The glosspair Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "core/utf8.hpp"

#include "core/error.hpp"

namespace glosspair {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "E_INVALID_ARGUMENT";
    case ErrorCode::Config: return "E_CONFIG";
    case ErrorCode::Io: return "E_IO";
    case ErrorCode::Format: return "E_FORMAT";
    case ErrorCode::Data: return "E_DATA";
    case ErrorCode::NotFound: return "E_NOT_FOUND";
    case ErrorCode::OutOfRange: return "E_OUT_OF_RANGE";
    case ErrorCode::Conflict: return "E_CONFLICT";
    case ErrorCode::Unannotated: return "E_UNANNOTATED";
    case ErrorCode::EmptyTest: return "E_EMPTY_TEST";
    case ErrorCode::UndefinedSimilarity: return "E_UNDEFINED_SIMILARITY";
    case ErrorCode::Parse: return "E_PARSE";
  }
  return "E_UNKNOWN";
}

namespace utf8 {
namespace {

// Returns the number of bytes consumed, 0 on malformed input.
std::size_t decode_one(std::string_view s, std::size_t i, char32_t& cp) noexcept {
  const auto b0 = static_cast<unsigned char>(s[i]);
  std::size_t len = 0;
  char32_t min = 0;
  if (b0 < 0x80) {
    cp = b0;
    return 1;
  } else if ((b0 & 0xE0) == 0xC0) {
    len = 2; cp = b0 & 0x1F; min = 0x80;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3; cp = b0 & 0x0F; min = 0x800;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4; cp = b0 & 0x07; min = 0x10000;
  } else {
    return 0;
  }
  if (i + len > s.size()) return 0;
  for (std::size_t k = 1; k < len; ++k) {
    const auto b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0) != 0x80) return 0;
    cp = (cp << 6) | (b & 0x3F);
  }
  if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return 0;
  return len;
}

}  // namespace

std::u32string decode(std::string_view bytes) {
  std::u32string out;
  out.reserve(bytes.size());
  for (std::size_t i = 0; i < bytes.size();) {
    char32_t cp = 0;
    const std::size_t n = decode_one(bytes, i, cp);
    if (n == 0) {
      throw Error(ErrorCode::Format,
                  "invalid UTF-8 at byte offset " + std::to_string(i));
    }
    out.push_back(cp);
    i += n;
  }
  return out;
}

bool is_valid(std::string_view bytes) noexcept {
  for (std::size_t i = 0; i < bytes.size();) {
    char32_t cp = 0;
    const std::size_t n = decode_one(bytes, i, cp);
    if (n == 0) return false;
    i += n;
  }
  return true;
}

void append(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string encode(std::u32string_view codepoints) {
  std::string out;
  out.reserve(codepoints.size() * 2);
  for (char32_t cp : codepoints) append(out, cp);
  return out;
}

}  // namespace utf8
}  // namespace glosspair
