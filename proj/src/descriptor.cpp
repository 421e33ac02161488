// Copyright 2026 The CarForge Authors
// SPDX-License-Identifier: Apache-2.0

#include "carforge/descriptor.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "carforge/error.hpp"

namespace carforge {

namespace {

using nlohmann::json;

std::string child(const std::string& ptr, std::string_view key) {
    return ptr + "/" + std::string(key);
}

std::string child(const std::string& ptr, std::size_t index) {
    return ptr + "/" + std::to_string(index);
}

void expect_object(const json& j, const std::string& ptr,
                   std::initializer_list<std::string_view> required,
                   std::initializer_list<std::string_view> optional) {
    if (!j.is_object()) throw ParseError(ptr.empty() ? "/" : ptr, "expected an object");
    for (const auto& [key, value] : j.items()) {
        const bool known = std::find(required.begin(), required.end(), key) != required.end() ||
                           std::find(optional.begin(), optional.end(), key) != optional.end();
        if (!known) throw ParseError(child(ptr, key), "unknown field '" + key + "'");
    }
    for (std::string_view key : required) {
        if (!j.contains(key)) {
            throw ParseError(ptr.empty() ? "/" : ptr, "missing field '" + std::string(key) + "'");
        }
    }
}

long long get_integer(const json& j, const std::string& ptr, long long lo, long long hi) {
    if (!j.is_number_integer()) throw ParseError(ptr, "expected an integer");
    const long long v = j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(hi)
                            ? hi + 1
                            : j.get<long long>();
    if (v < lo || v > hi) {
        throw ParseError(ptr, "value out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    return v;
}

double get_number(const json& j, const std::string& ptr) {
    if (!j.is_number()) throw ParseError(ptr, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ParseError(ptr, "expected a finite number");
    return v;
}

std::string get_string(const json& j, const std::string& ptr) {
    if (!j.is_string()) throw ParseError(ptr, "expected a string");
    return j.get<std::string>();
}

void check_bitstring(const std::string& s, int modes, const std::string& ptr) {
    if (static_cast<int>(s.size()) != modes ||
        !std::all_of(s.begin(), s.end(), [](char c) { return c == '0' || c == '1'; })) {
        throw ParseError(ptr, "expected a bit string of length " + std::to_string(modes));
    }
}

MeasureSpec parse_measure(const json& j, int modes, const std::string& ptr) {
    if (!j.is_object() || !j.contains("kind")) {
        expect_object(j, ptr, {"kind"}, {"p", "weights", "active"});
    }
    const std::string kind = get_string(j["kind"], child(ptr, "kind"));
    MeasureSpec out;
    if (kind == "uniform") {
        expect_object(j, ptr, {"kind"}, {});
        out.kind = MeasureKind::uniform;
    } else if (kind == "product") {
        expect_object(j, ptr, {"kind", "p"}, {});
        out.kind = MeasureKind::product;
        const json& p = j["p"];
        const std::string pptr = child(ptr, "p");
        if (!p.is_array()) throw ParseError(pptr, "expected an array");
        if (static_cast<int>(p.size()) != modes) {
            throw ParseError(pptr, "expected " + std::to_string(modes) + " probabilities");
        }
        for (std::size_t i = 0; i < p.size(); ++i) out.p.push_back(get_number(p[i], child(pptr, i)));
    } else if (kind == "explicit") {
        expect_object(j, ptr, {"kind", "weights"}, {});
        out.kind = MeasureKind::explicit_table;
        const json& w = j["weights"];
        const std::string wptr = child(ptr, "weights");
        if (!w.is_object()) throw ParseError(wptr, "expected an object");
        for (const auto& [key, value] : w.items()) {
            check_bitstring(key, modes, child(wptr, key));
            out.weights[key] = get_number(value, child(wptr, key));
        }
    } else if (kind == "frozen_tail") {
        expect_object(j, ptr, {"kind", "active"}, {});
        out.kind = MeasureKind::frozen_tail;
        out.frozen_active = static_cast<int>(get_integer(j["active"], child(ptr, "active"), 1, modes));
    } else {
        throw ParseError(child(ptr, "kind"), "unknown measure kind '" + kind + "'");
    }
    return out;
}

CocycleSpec parse_cocycle(const json& j, int modes, int nu, const std::string& ptr) {
    if (!j.is_object() || !j.contains("kind")) {
        expect_object(j, ptr, {"kind"}, {"values", "base", "seed", "symmetric"});
    }
    const std::string kind = get_string(j["kind"], child(ptr, "kind"));
    CocycleSpec out;
    out.kind = kind;
    if (kind == "trivial" || kind == "gw311") {
        expect_object(j, ptr, {"kind"}, {});
    } else if (kind == "explicit") {
        expect_object(j, ptr, {"kind", "values"}, {});
        const json& values = j["values"];
        const std::string vptr = child(ptr, "values");
        if (!values.is_array()) throw ParseError(vptr, "expected an array");
        std::set<std::pair<int, std::string>> seen;
        for (std::size_t i = 0; i < values.size(); ++i) {
            const json& e = values[i];
            const std::string eptr = child(vptr, i);
            const bool scalar = e.is_object() && !e.contains("block");
            if (scalar) {
                expect_object(e, eptr, {"k", "x", "re", "im"}, {});
            } else {
                expect_object(e, eptr, {"k", "x", "block"}, {});
            }
            CocycleEntry entry;
            entry.k = static_cast<int>(get_integer(e["k"], child(eptr, "k"), 1, modes));
            entry.x = get_string(e["x"], child(eptr, "x"));
            check_bitstring(entry.x, modes, child(eptr, "x"));
            if (!seen.emplace(entry.k, entry.x).second) {
                throw ParseError(eptr, "duplicate entry for k=" + std::to_string(entry.k) + ", x=" + entry.x);
            }
            if (scalar) {
                if (nu != 1) throw ParseError(eptr, "scalar entries need multiplicity 1; use 'block'");
                entry.block.emplace_back(get_number(e["re"], child(eptr, "re")),
                                         get_number(e["im"], child(eptr, "im")));
            } else {
                const json& b = e["block"];
                const std::string bptr = child(eptr, "block");
                const auto want = static_cast<std::size_t>(nu) * static_cast<std::size_t>(nu);
                if (!b.is_array() || b.size() != want) {
                    throw ParseError(bptr, "expected " + std::to_string(want) + " [re, im] pairs");
                }
                for (std::size_t q = 0; q < want; ++q) {
                    const std::string qptr = child(bptr, q);
                    if (!b[q].is_array() || b[q].size() != 2) throw ParseError(qptr, "expected [re, im]");
                    entry.block.emplace_back(get_number(b[q][0], child(qptr, 0)),
                                             get_number(b[q][1], child(qptr, 1)));
                }
            }
            out.values.push_back(std::move(entry));
        }
    } else if (kind == "gauged") {
        expect_object(j, ptr, {"kind", "base", "seed"}, {"symmetric"});
        out.base.push_back(parse_cocycle(j["base"], modes, nu, child(ptr, "base")));
        const json& seed = j["seed"];
        if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<long long>() >= 0)) {
            throw ParseError(child(ptr, "seed"), "expected a non-negative integer");
        }
        out.seed = seed.get<std::uint64_t>();
        if (j.contains("symmetric")) {
            if (!j["symmetric"].is_boolean()) throw ParseError(child(ptr, "symmetric"), "expected a boolean");
            out.symmetric = j["symmetric"].get<bool>();
        }
    } else {
        throw ParseError(child(ptr, "kind"), "unknown cocycle kind '" + kind + "'");
    }
    return out;
}

json measure_json(const MeasureSpec& m) {
    switch (m.kind) {
        case MeasureKind::uniform:
            return {{"kind", "uniform"}};
        case MeasureKind::product:
            return {{"kind", "product"}, {"p", m.p}};
        case MeasureKind::explicit_table:
            return {{"kind", "explicit"}, {"weights", m.weights}};
        case MeasureKind::frozen_tail:
            return {{"kind", "frozen_tail"}, {"active", m.frozen_active}};
    }
    throw Error("unhandled measure kind");
}

json cocycle_json(const CocycleSpec& c) {
    json j = {{"kind", c.kind}};
    if (c.kind == "explicit") {
        json values = json::array();
        for (const CocycleEntry& e : c.values) {
            json v = {{"k", e.k}, {"x", e.x}};
            if (e.block.size() == 1) {
                v["re"] = e.block[0].real();
                v["im"] = e.block[0].imag();
            } else {
                json b = json::array();
                for (Complex z : e.block) b.push_back({z.real(), z.imag()});
                v["block"] = std::move(b);
            }
            values.push_back(std::move(v));
        }
        j["values"] = std::move(values);
    } else if (c.kind == "gauged") {
        j["base"] = cocycle_json(c.base.at(0));
        j["seed"] = c.seed;
        j["symmetric"] = c.symmetric;
    }
    return j;
}

CocycleFamily cocycle_from_spec(const CocycleSpec& spec, int m, int nu, const std::string& ptr) {
    try {
        if (spec.kind == "trivial") return trivial(m, nu);
        if (spec.kind == "gw311") return gw311(m, nu);
        if (spec.kind == "gauged") {
            const CocycleFamily base = cocycle_from_spec(spec.base.at(0), m, nu, child(ptr, "base"));
            return gauge(base, random_phase_gauge(m, nu, spec.seed, spec.symmetric));
        }
        if (spec.kind == "explicit") {
            std::vector<BlockField> fields;
            for (int k = 1; k <= m; ++k) {
                BlockField f(m, nu);
                for (Word x = 0; x < f.configurations(); ++x) block::set_identity(f.at(x), nu);
                fields.push_back(std::move(f));
            }
            for (const CocycleEntry& e : spec.values) {
                const Word x = Configuration::parse(e.x).bits();
                std::copy(e.block.begin(), e.block.end(), fields[static_cast<std::size_t>(e.k - 1)].at(x).begin());
            }
            return CocycleFamily(std::move(fields), "explicit");
        }
    } catch (const CapacityError&) {
        throw;
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(ptr, e.what());
    }
    throw ParseError(child(ptr, "kind"), "unknown cocycle kind '" + spec.kind + "'");
}

}  // namespace

std::string text_location(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t end = std::min(byte == 0 ? 0 : byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

ModuleDescriptor parse_descriptor(std::string_view text) {
    json j;
    try {
        j = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        std::string message = e.what();
        if (const auto pos = message.find("syntax error"); pos != std::string::npos) {
            message = message.substr(pos);
        }
        throw ParseError(text_location(text, e.byte), message);
    }
    expect_object(j, "", {"modes", "measure", "cocycle"}, {"multiplicity", "active", "tolerance"});
    ModuleDescriptor d;
    d.modes = static_cast<int>(get_integer(j["modes"], "/modes", 1, kWordModes));
    if (j.contains("multiplicity")) {
        d.multiplicity = static_cast<int>(get_integer(j["multiplicity"], "/multiplicity", 1, 64));
    }
    if (j.contains("active")) {
        const json& a = j["active"];
        if (!a.is_array()) throw ParseError("/active", "expected an array");
        for (std::size_t i = 0; i < a.size(); ++i) {
            const int k = static_cast<int>(get_integer(a[i], child("/active", i), 1, d.modes));
            if (std::find(d.active.begin(), d.active.end(), k) != d.active.end()) {
                throw ParseError(child("/active", i), "duplicate mode " + std::to_string(k));
            }
            d.active.push_back(k);
        }
        std::sort(d.active.begin(), d.active.end());
        if (static_cast<int>(d.active.size()) == d.modes) d.active.clear();
    }
    if (j.contains("tolerance")) {
        const double t = get_number(j["tolerance"], "/tolerance");
        if (t < 0.0) throw ParseError("/tolerance", "expected a non-negative number");
        d.tolerance = t;
    }
    d.measure = parse_measure(j["measure"], d.modes, "/measure");
    d.cocycle = parse_cocycle(j["cocycle"], d.modes, d.multiplicity, "/cocycle");
    return d;
}

ModuleDescriptor load_descriptor(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path, "cannot read file");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_descriptor(buf.str());
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.location(), std::string(e.what()).substr(e.location().size() + 2));
    }
}

std::string serialize(const ModuleDescriptor& d) {
    json j = {{"modes", d.modes},
              {"multiplicity", d.multiplicity},
              {"measure", measure_json(d.measure)},
              {"cocycle", cocycle_json(d.cocycle)}};
    if (!d.active.empty()) j["active"] = d.active;
    if (d.tolerance) j["tolerance"] = *d.tolerance;
    return j.dump(2) + "\n";
}

OccupationMeasure build_measure(const ModuleDescriptor& d) {
    try {
        require_modes(d.modes);
        switch (d.measure.kind) {
            case MeasureKind::uniform:
                return OccupationMeasure::uniform(d.modes);
            case MeasureKind::product:
                return OccupationMeasure::product(d.measure.p);
            case MeasureKind::explicit_table: {
                std::vector<double> w(std::size_t{1} << d.modes, 0.0);
                for (const auto& [x, weight] : d.measure.weights) w[Configuration::parse(x).bits()] = weight;
                return OccupationMeasure::explicit_weights(d.modes, std::move(w));
            }
            case MeasureKind::frozen_tail:
                return OccupationMeasure::frozen_tail(d.modes, d.measure.frozen_active);
        }
    } catch (const CapacityError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError("/measure", e.what());
    }
    throw ParseError("/measure/kind", "unhandled measure kind");
}

CocycleFamily build_cocycle(const ModuleDescriptor& d) {
    require_modes(d.modes);
    return cocycle_from_spec(d.cocycle, d.modes, d.multiplicity, "/cocycle");
}

Triple build_triple(const ModuleDescriptor& d) {
    OccupationMeasure mu = build_measure(d);
    CocycleFamily c = build_cocycle(d);
    std::vector<int> active = d.active;
    if (active.empty()) {
        for (int k = 1; k <= d.modes; ++k) active.push_back(k);
    }
    if (!quasi_invariant(mu, active)) {
        throw ParseError("/measure", "support is not invariant under the active generators");
    }
    try {
        return Triple(std::move(mu), std::move(c), d.active, d.tolerance.value_or(kDefaultTolerance));
    } catch (const CapacityError&) {
        throw;
    } catch (const ValidationError& e) {
        throw ParseError("/cocycle", e.what());
    } catch (const Error& e) {
        throw ParseError("/", e.what());
    }
}

}  // namespace carforge
