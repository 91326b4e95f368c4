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
#include "qnet/data/dataset.hpp"

#include "qnet/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <set>

namespace qnet::data {

namespace {

[[noreturn]] void fail(std::size_t line, const std::string &what) {
    throw DataError("line " + std::to_string(line) + ": " + what);
}

RawExample sentence(const std::string &text, std::string label) {
    return {normalize_and_tokenize(text), std::move(label), {}};
}

// Reads one CSV record, which may span physical lines inside quotes.
bool csv_record(std::istream &in, std::size_t &line, std::vector<std::string> &fields) {
    fields.clear();
    std::string raw;
    if (!std::getline(in, raw)) return false;
    ++line;
    const std::size_t start = line;
    std::string field;
    bool quoted = false;
    bool after_quote = false;
    std::size_t i = 0;
    while (true) {
        if (i == raw.size()) {
            if (quoted) {
                std::string more;
                if (!std::getline(in, more)) fail(start, "unterminated quoted field");
                ++line;
                field.push_back('\n');
                raw = std::move(more);
                i = 0;
                continue;
            }
            if (!field.empty() && field.back() == '\r' && !after_quote) field.pop_back();
            fields.push_back(std::move(field));
            return true;
        }
        const char c = raw[i++];
        if (quoted) {
            if (c == '"') {
                if (i < raw.size() && raw[i] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                    after_quote = true;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
            after_quote = false;
        } else if (c == '"' && field.empty() && !after_quote) {
            quoted = true;
        } else if (after_quote && c != '\r') {
            fail(line, "unexpected character after closing quote");
        } else if (c == '"') {
            fail(line, "stray quote in unquoted field");
        } else if (!after_quote) {
            field.push_back(c);
        }
    }
}

std::string label_text(const nlohmann::json &v, std::size_t line) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number()) return v.dump();
    if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
    fail(line, "label must be a string or a number");
}

bool parse_index(const std::string &s, std::size_t &out) {
    const auto *end = s.data() + s.size();
    const auto r = std::from_chars(s.data(), end, out);
    return r.ec == std::errc{} && r.ptr == end && !s.empty();
}

} // namespace

Format parse_format(const std::string &s) {
    if (s == "csv" || s == "csv_text_label") return Format::csv_text_label;
    if (s == "jsonl" || s == "jsonl_text_label") return Format::jsonl_text_label;
    if (s == "conll" || s == "conll_bio") return Format::conll_bio;
    throw ArgumentError("unknown dataset format '" + s + "'");
}

std::string to_string(Format f) {
    switch (f) {
    case Format::csv_text_label:
        return "csv_text_label";
    case Format::jsonl_text_label:
        return "jsonl_text_label";
    case Format::conll_bio:
        return "conll_bio";
    }
    return "csv_text_label";
}

RawDataset read_csv(std::istream &in) {
    RawDataset out;
    std::size_t line = 0;
    std::vector<std::string> fields;
    if (!csv_record(in, line, fields)) throw DataError("line 1: empty file, expected header");
    if (!fields.empty() && fields[0].starts_with("\xEF\xBB\xBF")) fields[0].erase(0, 3);
    const auto text_col = std::find(fields.begin(), fields.end(), "text") - fields.begin();
    const auto label_col = std::find(fields.begin(), fields.end(), "label") - fields.begin();
    const auto width = fields.size();
    if (static_cast<std::size_t>(text_col) == width ||
        static_cast<std::size_t>(label_col) == width) {
        fail(1, "header must name 'text' and 'label' columns");
    }
    while (true) {
        const std::size_t next = line + 1;
        if (!csv_record(in, line, fields)) break;
        if (fields.size() == 1 && fields[0].empty()) continue;
        if (fields.size() != width) {
            fail(next, "expected " + std::to_string(width) + " fields, found " +
                           std::to_string(fields.size()));
        }
        out.examples.push_back(sentence(fields[static_cast<std::size_t>(text_col)],
                                        fields[static_cast<std::size_t>(label_col)]));
    }
    return out;
}

RawDataset read_jsonl(std::istream &in) {
    RawDataset out;
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (std::all_of(raw.begin(), raw.end(), [](unsigned char c) { return std::isspace(c); }))
            continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(raw);
        } catch (const nlohmann::json::exception &e) {
            fail(line, std::string("invalid JSON: ") + e.what());
        }
        if (!j.is_object() || !j.contains("text") || !j.contains("label")) {
            fail(line, "expected an object with 'text' and 'label'");
        }
        if (!j["text"].is_string()) fail(line, "'text' must be a string");
        out.examples.push_back(sentence(j["text"].get<std::string>(), label_text(j["label"], line)));
    }
    return out;
}

std::size_t repair_bio(std::vector<std::string> &tags) {
    std::size_t repairs = 0;
    std::string prev = "O";
    for (auto &t : tags) {
        if (t.starts_with("I-")) {
            const auto type = t.substr(2);
            if (prev != "B-" + type && prev != "I-" + type) {
                t = "B-" + type;
                ++repairs;
            }
        }
        prev = t;
    }
    return repairs;
}

RawDataset read_conll(std::istream &in) {
    RawDataset out;
    out.token_level = true;
    RawExample current;
    auto flush = [&] {
        if (current.tokens.empty()) return;
        out.bio_repairs += repair_bio(current.tags);
        out.examples.push_back(std::move(current));
        current = {};
    };
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        if (raw.find_first_not_of(" \t") == std::string::npos) {
            flush();
            continue;
        }
        const auto tab = raw.find('\t');
        if (tab == std::string::npos) fail(line, "expected token<TAB>tag");
        std::string token = raw.substr(0, tab);
        std::string tag = raw.substr(tab + 1);
        if (token.empty()) fail(line, "empty token");
        if (tag != "O" && !((tag.starts_with("B-") || tag.starts_with("I-")) && tag.size() > 2)) {
            fail(line, "tag '" + tag + "' is not O, B-X or I-X");
        }
        current.tokens.push_back(std::move(token));
        current.tags.push_back(std::move(tag));
    }
    flush();
    return out;
}

RawDataset load_dataset(const std::filesystem::path &path, Format format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open dataset " + path.string());
    try {
        switch (format) {
        case Format::csv_text_label:
            return read_csv(in);
        case Format::jsonl_text_label:
            return read_jsonl(in);
        case Format::conll_bio:
            return read_conll(in);
        }
    } catch (const DataError &e) {
        throw DataError(path.string() + " " + e.what());
    }
    return {};
}

SplitIndices split(std::size_t size, std::uint64_t seed, double test_fraction) {
    if (size < 2) throw DataError("cannot split a dataset of fewer than 2 examples");
    if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
        throw ArgumentError("test fraction must lie in (0, 1)");
    }
    std::vector<std::size_t> order(size);
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
    auto n_test = static_cast<std::size_t>(std::llround(test_fraction * static_cast<double>(size)));
    n_test = std::clamp<std::size_t>(n_test, 1, size - 1);
    SplitIndices out;
    out.test.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_test));
    out.train.assign(order.begin() + static_cast<std::ptrdiff_t>(n_test), order.end());
    return out;
}

Prepared prepare(const RawDataset &raw, model::HeadKind head, std::size_t n,
                 std::uint64_t seed, double test_fraction) {
    using model::HeadKind;
    if (raw.examples.empty()) throw DataError("dataset is empty");
    if ((head == HeadKind::token_classify) != raw.token_level) {
        throw DataError(head == HeadKind::token_classify
                            ? "token head needs a tagged dataset"
                            : "tagged dataset needs the token head");
    }
    Prepared out;

    // label ids
    std::map<std::string, std::size_t> label_ids;
    if (head == HeadKind::token_classify) {
        std::set<std::string> tags;
        for (const auto &e : raw.examples) tags.insert(e.tags.begin(), e.tags.end());
        tags.erase("O");
        out.label_names.push_back("O");
        out.label_names.insert(out.label_names.end(), tags.begin(), tags.end());
    } else if (head == HeadKind::sentence_classify) {
        bool numeric = true;
        std::size_t max_id = 0;
        std::set<std::string> names;
        for (const auto &e : raw.examples) {
            std::size_t v = 0;
            numeric = numeric && parse_index(e.label, v);
            max_id = std::max(max_id, v);
            names.insert(e.label);
        }
        if (numeric) {
            for (std::size_t k = 0; k <= std::max<std::size_t>(max_id, 1); ++k)
                out.label_names.push_back(std::to_string(k));
        } else {
            out.label_names.assign(names.begin(), names.end());
        }
    }
    for (std::size_t k = 0; k < out.label_names.size(); ++k) label_ids[out.label_names[k]] = k;

    const auto parts = split(raw.examples.size(), seed, test_fraction);
    std::vector<std::vector<std::string>> train_tokens;
    for (auto i : parts.train) train_tokens.push_back(raw.examples[i].tokens);
    out.vocab = Vocab::build(train_tokens);

    auto convert = [&](const RawExample &e) {
        Example ex;
        ex.ids = encode(e.tokens, out.vocab, n);
        auto &t = ex.target;
        switch (head) {
        case HeadKind::sentence_classify:
            t.label = label_ids.at(e.label);
            break;
        case HeadKind::regress: {
            try {
                std::size_t used = 0;
                t.value = std::stod(e.label, &used);
                if (used != e.label.size()) throw std::invalid_argument("trailing");
            } catch (const std::exception &) {
                throw DataError("regression label '" + e.label + "' is not a number");
            }
            break;
        }
        case HeadKind::token_classify:
            t.tags.assign(n, 0);
            t.mask.assign(n, false);
            for (std::size_t i = 0; i < std::min(n, e.tags.size()); ++i) {
                t.tags[i] = label_ids.at(e.tags[i]);
                t.mask[i] = true;
            }
            break;
        }
        return ex;
    };
    for (auto i : parts.train) out.train.push_back(convert(raw.examples[i]));
    for (auto i : parts.test) out.test.push_back(convert(raw.examples[i]));
    return out;
}

SyntheticKind parse_synthetic(const std::string &s) {
    if (s == "keyword_presence") return SyntheticKind::keyword_presence;
    if (s == "tag_copy") return SyntheticKind::tag_copy;
    throw ArgumentError("unknown synthetic corpus '" + s + "'");
}

std::string to_string(SyntheticKind k) {
    return k == SyntheticKind::keyword_presence ? "keyword_presence" : "tag_copy";
}

RawDataset synthetic(SyntheticKind kind, std::size_t size, std::uint64_t seed) {
    if (size < 10) throw DataError("synthetic corpora need at least 10 examples");
    constexpr std::size_t kSymbols = 16;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> length(2, 4);
    RawDataset out;
    if (kind == SyntheticKind::keyword_presence) {
        std::uniform_int_distribution<std::size_t> filler(1, kSymbols - 1);
        const std::size_t positives = size / 2;
        for (std::size_t k = 0; k < size; ++k) {
            const bool positive = k < positives;
            const std::size_t len = length(rng);
            RawExample e;
            for (std::size_t i = 0; i < len; ++i) e.tokens.push_back("w" + std::to_string(filler(rng)));
            if (positive) {
                std::uniform_int_distribution<std::size_t> at(0, len - 1);
                e.tokens[at(rng)] = "w0";
            }
            e.label = positive ? "1" : "0";
            out.examples.push_back(std::move(e));
        }
        std::shuffle(out.examples.begin(), out.examples.end(), rng);
        return out;
    }
    out.token_level = true;
    std::uniform_int_distribution<std::size_t> symbol(0, kSymbols - 1);
    for (std::size_t k = 0; k < size; ++k) {
        const std::size_t len = length(rng);
        RawExample e;
        for (std::size_t i = 0; i < len; ++i) {
            const auto s = symbol(rng);
            e.tokens.push_back("t" + std::to_string(s));
            e.tags.push_back(s >= 1 && s <= 3 ? "T" + std::to_string(s) : "O");
        }
        out.examples.push_back(std::move(e));
    }
    return out;
}

} // namespace qnet::data
