// Copyright 2026 The QNet Simulator Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace qnet::data {

/// Lowercases ASCII letters, drops ASCII punctuation and splits on ASCII
/// whitespace. Bytes >= 0x80 pass through untouched.
std::vector<std::string> normalize_and_tokenize(std::string_view text);

/// The tokens joined by single spaces.
std::string normalize(std::string_view text);

class Vocab {
  public:
    static constexpr std::size_t kPad = 0;
    static constexpr std::size_t kUnk = 1;

    Vocab();

    /// Ids in first-seen order after PAD and UNK.
    static Vocab build(std::span<const std::vector<std::string>> sentences);

    std::size_t add(const std::string &token);
    [[nodiscard]] std::size_t id(const std::string &token) const;
    [[nodiscard]] const std::string &token(std::size_t id) const;
    [[nodiscard]] std::size_t size() const { return tokens_.size(); }
    [[nodiscard]] bool contains(const std::string &token) const {
        return ids_.contains(token);
    }
    [[nodiscard]] const std::vector<std::string> &tokens() const { return tokens_; }

  private:
    std::vector<std::string> tokens_;
    std::unordered_map<std::string, std::size_t> ids_;
};

/// First n ids, right-padded with PAD; unknown tokens map to UNK.
std::vector<std::size_t> encode(std::span<const std::string> tokens, const Vocab &vocab,
                                std::size_t n);

/// Tokens up to the first PAD.
std::vector<std::string> decode(std::span<const std::size_t> ids, const Vocab &vocab);

} // namespace qnet::data
