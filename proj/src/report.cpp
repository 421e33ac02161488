// Copyright 2026 The CarForge Authors
// SPDX-License-Identifier: Apache-2.0

#include "carforge/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "carforge/error.hpp"

namespace carforge {

namespace {

using nlohmann::json;

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string scalar_text(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_float()) return format_double(v.get<double>());
    if (v.is_null()) return "-";
    return v.dump();
}

bool printable(const json& v) {
    return v.is_primitive() ||
           (v.is_array() && std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_primitive(); }));
}

bool flat_object(const json& v) {
    return v.is_object() && std::all_of(v.begin(), v.end(), printable);
}

std::string pad(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

void emit(std::vector<std::string>& out, const std::string& line) {
    for (std::string& piece : wrap(line, kReportWidth, 4)) out.push_back(std::move(piece));
}

/// Arrays of flat objects sharing one key set become aligned tables.
bool emit_table(std::vector<std::string>& out, const std::string& title, const json& rows) {
    if (!rows.is_array() || rows.empty() || !flat_object(rows[0])) return false;
    std::vector<std::string> keys;
    for (const auto& [k, v] : rows[0].items()) keys.push_back(k);
    std::vector<std::size_t> widths;
    for (const std::string& k : keys) widths.push_back(k.size());
    std::vector<std::vector<std::string>> cells;
    for (const json& row : rows) {
        if (!flat_object(row) || row.size() != keys.size()) return false;
        std::vector<std::string> line;
        for (std::size_t c = 0; c < keys.size(); ++c) {
            if (!row.contains(keys[c])) return false;
            line.push_back(scalar_text(row[keys[c]]));
            widths[c] = std::max(widths[c], line.back().size());
        }
        cells.push_back(std::move(line));
    }
    std::size_t total = 0;
    for (std::size_t w : widths) total += w + 2;
    if (total > kReportWidth) return false;
    out.push_back(title + ":");
    const auto row_text = [&](const std::vector<std::string>& line) {
        std::string s = " ";
        for (std::size_t c = 0; c < line.size(); ++c) s += " " + pad(line[c], widths[c] + 1);
        while (!s.empty() && s.back() == ' ') s.pop_back();
        return s;
    };
    out.push_back(row_text(keys));
    for (const auto& line : cells) out.push_back(row_text(line));
    return true;
}

void emit_value(std::vector<std::string>& out, const std::string& key, const json& v) {
    if (v.is_object()) {
        for (const auto& [k, child] : v.items()) emit_value(out, key.empty() ? k : key + "." + k, child);
        return;
    }
    if (v.is_array() && !v.empty() && !v[0].is_primitive()) {
        if (emit_table(out, key, v)) return;
        for (std::size_t i = 0; i < v.size(); ++i) {
            emit_value(out, key + "[" + std::to_string(i) + "]", v[i]);
        }
        return;
    }
    emit(out, pad(key, 28) + " " + scalar_text(v));
}

}  // namespace

std::vector<std::string> wrap(const std::string& line, std::size_t width, std::size_t indent) {
    std::vector<std::string> out;
    std::string rest = line;
    const std::string lead(indent, ' ');
    bool first = true;
    while (true) {
        const std::string prefix = first ? "" : lead;
        if (prefix.size() + rest.size() <= width) {
            out.push_back(prefix + rest);
            break;
        }
        const std::size_t room = width - prefix.size();
        std::size_t cut = rest.rfind(' ', room);
        if (cut == std::string::npos || cut == 0) cut = room;
        out.push_back(prefix + rest.substr(0, cut));
        rest = rest.substr(cut);
        rest.erase(0, rest.find_first_not_of(' '));
        if (rest.empty()) break;
        first = false;
    }
    return out;
}

std::string fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json to_json(const Report& r) {
    json rows = json::array();
    for (const ResidualRow& row : r.residuals) {
        rows.push_back({{"name", row.name}, {"value", row.value}, {"tolerance", row.tolerance}, {"pass", row.pass}});
    }
    return {{"command", r.command},
            {"inputs_digest", r.inputs_digest},
            {"seed", r.seed},
            {"verdict", r.verdict},
            {"exit_code", r.exit_code},
            {"result", r.result},
            {"residuals", std::move(rows)},
            {"notes", r.notes},
            {"runtime_seconds", r.runtime_seconds}};
}

Report report_from_json(const json& j) {
    try {
        Report r;
        r.command = j.at("command").get<std::string>();
        r.inputs_digest = j.at("inputs_digest").get<std::string>();
        r.seed = j.at("seed").get<std::uint64_t>();
        r.verdict = j.at("verdict").get<std::string>();
        r.exit_code = j.at("exit_code").get<int>();
        r.result = j.at("result");
        for (const json& row : j.at("residuals")) {
            r.residuals.push_back({row.at("name").get<std::string>(), row.at("value").get<double>(),
                                   row.at("tolerance").get<double>(), row.at("pass").get<bool>()});
        }
        r.notes = j.at("notes").get<std::vector<std::string>>();
        r.runtime_seconds = j.at("runtime_seconds").get<double>();
        return r;
    } catch (const json::exception& e) {
        throw ParseError("/", std::string("malformed report: ") + e.what());
    }
}

std::string render_json(const Report& r) {
    return to_json(r).dump(2) + "\n";
}

std::string render_text(const Report& r) {
    std::vector<std::string> out;
    emit(out, pad("command", 28) + " " + r.command);
    emit(out, pad("inputs digest", 28) + " fnv1a64:" + r.inputs_digest);
    emit(out, pad("seed", 28) + " " + std::to_string(r.seed));
    emit(out, pad("verdict", 28) + " " + r.verdict);
    emit_value(out, "", r.result);
    if (!r.residuals.empty()) {
        std::size_t name_width = 8;
        for (const ResidualRow& row : r.residuals) name_width = std::max(name_width, row.name.size());
        name_width = std::min<std::size_t>(name_width, 56);
        out.push_back("");
        out.push_back(pad("residual", name_width) + "  " + pad("value", 14) + "  " + pad("tolerance", 14) +
                      "  status");
        out.push_back(std::string(name_width + 40, '-'));
        for (const ResidualRow& row : r.residuals) {
            emit(out, pad(row.name, name_width) + "  " + pad(format_double(row.value), 14) + "  " +
                          pad(format_double(row.tolerance), 14) + "  " + (row.pass ? "ok" : "FAIL"));
        }
    }
    if (!r.notes.empty()) out.push_back("");
    for (const std::string& note : r.notes) emit(out, "note: " + note);
    char runtime[48];
    std::snprintf(runtime, sizeof runtime, "%.3f s", r.runtime_seconds);
    out.push_back("");
    emit(out, pad("runtime", 28) + " " + runtime);
    emit(out, pad("exit code", 28) + " " + std::to_string(r.exit_code));
    std::string text;
    for (const std::string& line : out) text += line + "\n";
    return text;
}

}  // namespace carforge
