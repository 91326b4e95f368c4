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

#include "qnet/data/text.hpp"
#include "qnet/model/hybrid.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

/**
 * @file
 * Dataset files, splits and the bundled synthetic corpora.
 *
 * Raw records keep tokens and label strings. `prepare` turns them into
 * fixed-length id sequences with model targets, using a vocabulary built
 * from the training split alone.
 */
namespace qnet::data {

enum class Format { csv_text_label, jsonl_text_label, conll_bio };

Format parse_format(const std::string &s);
std::string to_string(Format f);

struct RawExample {
    std::vector<std::string> tokens;
    std::string label;             ///< sentence-level label text
    std::vector<std::string> tags; ///< token-level tags, aligned with tokens
};

struct RawDataset {
    std::vector<RawExample> examples;
    bool token_level{false};
    std::size_t bio_repairs{0}; ///< I-X tags rewritten to B-X
};

/// CSV with a `text,label` header and RFC 4180 quoting.
RawDataset read_csv(std::istream &in);
/// One {"text": ..., "label": ...} object per line; blank lines skipped.
RawDataset read_jsonl(std::istream &in);
/// `token<TAB>tag` lines with blank-line sentence breaks. Tokens are kept
/// verbatim.
RawDataset read_conll(std::istream &in);

/// DataError (with the line number) on malformed input.
RawDataset load_dataset(const std::filesystem::path &path, Format format);

/// Tag sequence with every orphan I-X turned into B-X. Returns the count.
std::size_t repair_bio(std::vector<std::string> &tags);

/// Shuffled (train, test) index partition with |test| = round(fraction N).
struct SplitIndices {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
};
inline constexpr double kTestFraction = 0.27;
SplitIndices split(std::size_t size, std::uint64_t seed, double test_fraction = kTestFraction);

struct Example {
    std::vector<std::size_t> ids;
    model::Target target;
};

struct Prepared {
    Vocab vocab;
    std::vector<std::string> label_names; ///< class or tag names by id
    std::vector<Example> train;
    std::vector<Example> test;
};

/**
 * Split, build the vocabulary from the training part and encode to length n.
 *
 * Sentence labels become class ids: their integer values when every label
 * is a non-negative integer, otherwise ranks among the sorted distinct
 * names. Regression labels are parsed as reals. Tag ids put "O" at 0 and
 * the other tags in sorted order.
 */
Prepared prepare(const RawDataset &raw, model::HeadKind head, std::size_t n,
                 std::uint64_t seed, double test_fraction = kTestFraction);

enum class SyntheticKind { keyword_presence, tag_copy };
SyntheticKind parse_synthetic(const std::string &s);
std::string to_string(SyntheticKind k);

/**
 * Bundled toy corpora over 16 symbols, sentences of 2 to 4 tokens.
 *
 * keyword_presence: symbols w0..w15, label 1 iff w0 occurs; exactly half of
 * the examples are positive. tag_copy: symbols t0..t15, where t1, t2, t3 are
 * tagged T1, T2, T3 and every other symbol O.
 */
RawDataset synthetic(SyntheticKind kind, std::size_t size, std::uint64_t seed);

} // namespace qnet::data
