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
#include "qnet/data/text.hpp"

#include "qnet/errors.hpp"

namespace qnet::data {

namespace {

bool ascii_punct(unsigned char c) {
    return (c >= 33 && c <= 47) || (c >= 58 && c <= 64) || (c >= 91 && c <= 96) ||
           (c >= 123 && c <= 126);
}

bool ascii_space(unsigned char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

} // namespace

std::vector<std::string> normalize_and_tokenize(std::string_view text) {
    std::vector<std::string> out;
    std::string current;
    for (const char ch : text) {
        const auto c = static_cast<unsigned char>(ch);
        if (ascii_space(c)) {
            if (!current.empty()) out.push_back(std::move(current));
            current.clear();
        } else if (!ascii_punct(c)) {
            current.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : ch);
        }
    }
    if (!current.empty()) out.push_back(std::move(current));
    return out;
}

std::string normalize(std::string_view text) {
    std::string out;
    for (const auto &t : normalize_and_tokenize(text)) {
        if (!out.empty()) out.push_back(' ');
        out += t;
    }
    return out;
}

Vocab::Vocab() {
    add("<pad>");
    add("<unk>");
}

Vocab Vocab::build(std::span<const std::vector<std::string>> sentences) {
    Vocab v;
    for (const auto &s : sentences) {
        for (const auto &t : s) v.add(t);
    }
    return v;
}

std::size_t Vocab::add(const std::string &token) {
    const auto [it, inserted] = ids_.try_emplace(token, tokens_.size());
    if (inserted) tokens_.push_back(token);
    return it->second;
}

std::size_t Vocab::id(const std::string &token) const {
    const auto it = ids_.find(token);
    return it == ids_.end() ? kUnk : it->second;
}

const std::string &Vocab::token(std::size_t id) const {
    if (id >= tokens_.size()) {
        throw IndexError("token id " + std::to_string(id) + " outside the vocabulary");
    }
    return tokens_[id];
}

std::vector<std::size_t> encode(std::span<const std::string> tokens, const Vocab &vocab,
                                std::size_t n) {
    std::vector<std::size_t> ids(n, Vocab::kPad);
    for (std::size_t i = 0; i < std::min(n, tokens.size()); ++i) ids[i] = vocab.id(tokens[i]);
    return ids;
}

std::vector<std::string> decode(std::span<const std::size_t> ids, const Vocab &vocab) {
    std::vector<std::string> out;
    for (auto id : ids) {
        if (id == Vocab::kPad) break;
        out.push_back(vocab.token(id));
    }
    return out;
}

} // namespace qnet::data
