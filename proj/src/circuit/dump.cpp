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
#include "qnet/circuit/dump.hpp"

#include "qnet/errors.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace qnet::circuit {

namespace {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_indices(char prefix, const std::vector<std::size_t> &idx) {
    std::string out(1, prefix);
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        out += std::to_string(idx[i]);
    }
    return out;
}

std::string format_angle(const Angle &a) {
    if (!a.param) {
        return format_double(a.offset);
    }
    std::string out = "@" + std::to_string(*a.param);
    if (a.scale != 1.0) {
        out += "*" + format_double(a.scale);
    }
    if (a.offset != 0.0) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%+.17g", a.offset);
        out += buf;
    }
    return out;
}

[[noreturn]] void fail(std::size_t line, const std::string &what) {
    throw ArgumentError("circuit dump line " + std::to_string(line) + ": " + what);
}

std::vector<std::size_t> parse_indices(std::string_view s, std::size_t line) {
    std::vector<std::size_t> out;
    while (!s.empty()) {
        const auto comma = s.find(',');
        const auto part = s.substr(0, comma);
        std::size_t v = 0;
        const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
        if (ec != std::errc{} || ptr != part.data() + part.size()) {
            fail(line, "bad qubit index '" + std::string(part) + "'");
        }
        out.push_back(v);
        if (comma == std::string_view::npos) {
            break;
        }
        s.remove_prefix(comma + 1);
    }
    return out;
}

Angle parse_angle(const std::string &tok, std::size_t line) {
    const char *begin = tok.c_str();
    char *end = nullptr;
    if (tok.empty() || tok[0] != '@') {
        const double v = std::strtod(begin, &end);
        if (end == begin || *end != '\0') {
            fail(line, "bad angle '" + tok + "'");
        }
        return Angle::constant(v);
    }
    const unsigned long long idx = std::strtoull(begin + 1, &end, 10);
    if (end == begin + 1) {
        fail(line, "bad parameter reference '" + tok + "'");
    }
    Angle a = Angle::ref(static_cast<std::size_t>(idx));
    if (*end == '*') {
        const char *s = end + 1;
        a.scale = std::strtod(s, &end);
        if (end == s) {
            fail(line, "bad scale in '" + tok + "'");
        }
    }
    if (*end == '+' || *end == '-') {
        const char *s = end;
        a.offset = std::strtod(s, &end);
        if (end == s) {
            fail(line, "bad offset in '" + tok + "'");
        }
    }
    if (*end != '\0') {
        fail(line, "trailing characters in '" + tok + "'");
    }
    return a;
}

} // namespace

std::string dump(const Circuit &circuit) {
    std::ostringstream out;
    out << "# qubits " << circuit.num_qubits() << '\n';
    std::size_t current = 0;
    for (const auto &op : circuit.ops()) {
        if (op.layer != current) {
            current = op.layer;
            out << "# layer " << circuit.layers()[current] << '\n';
        }
        out << sim::kind_name(op.kind) << ' ' << format_indices('q', op.targets);
        if (!op.controls.empty() || op.kind == sim::GateKind::MCX) {
            out << ' ' << format_indices('c', op.controls);
        }
        for (const auto &a : op.angles) {
            out << ' ' << format_angle(a);
        }
        out << '\n';
    }
    return out.str();
}

Circuit parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line_no = 0;
    std::optional<Circuit> circuit;
    while (std::getline(in, raw)) {
        ++line_no;
        std::istringstream line(raw);
        std::string head;
        if (!(line >> head)) {
            continue;
        }
        if (head == "#") {
            std::string key;
            line >> key;
            if (key == "qubits") {
                std::size_t n = 0;
                if (!(line >> n)) {
                    fail(line_no, "missing qubit count");
                }
                circuit.emplace(n);
            } else if (key == "layer") {
                if (!circuit) {
                    fail(line_no, "layer before qubit count");
                }
                std::string tag;
                line >> tag;
                circuit->begin_layer(tag);
            }
            continue;
        }
        if (!circuit) {
            fail(line_no, "gate before '# qubits' header");
        }
        const auto kind = sim::parse_kind(head);
        if (!kind) {
            fail(line_no, "unknown gate kind '" + head + "'");
        }
        Op op{*kind, {}, {}, {}, 0};
        std::string tok;
        while (line >> tok) {
            if (tok[0] == 'q') {
                op.targets = parse_indices(std::string_view(tok).substr(1), line_no);
            } else if (tok[0] == 'c') {
                op.controls = parse_indices(std::string_view(tok).substr(1), line_no);
            } else {
                op.angles.push_back(parse_angle(tok, line_no));
            }
        }
        try {
            circuit->append(std::move(op));
        } catch (const Error &e) {
            fail(line_no, e.what());
        }
    }
    if (!circuit) {
        throw ArgumentError("circuit dump has no '# qubits' header");
    }
    return std::move(*circuit);
}

} // namespace qnet::circuit
