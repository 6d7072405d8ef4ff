// Copyright 2026 The hiermem Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HIERMEM_ERROR_H
#define HIERMEM_ERROR_H

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hiermem {

/// Domain error carrying a short machine-readable kind such as "invalid-parameters".
class Error : public std::runtime_error {
   public:
    Error(std::string kind, const std::string &detail)
        : std::runtime_error(kind + ": " + detail), kind_(std::move(kind)) {
    }
    const std::string &kind() const {
        return kind_;
    }

   private:
    std::string kind_;
};

/// 64-bit FNV-1a hash, used for content hashes in text headers.
uint64_t fnv1a64(const std::string &text);
std::string hex64(uint64_t value);

}  // namespace hiermem

#endif
