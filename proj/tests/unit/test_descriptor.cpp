// Copyright 2026 The CarForge Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "carforge/descriptor.hpp"
#include "carforge/error.hpp"
#include "carforge/realform.hpp"

using namespace carforge;

namespace {

std::string descriptor_path(const std::string& name) {
    const char* dir = std::getenv("CARFORGE_DESCRIPTORS");
    return std::string(dir ? dir : "descriptors") + "/" + name + ".json";
}

std::string parse_location(std::string_view text) {
    try {
        (void)parse_descriptor(text);
    } catch (const ParseError& e) {
        return e.location();
    }
    return "<none>";
}

}  // namespace

TEST_CASE("shipped descriptors round trip through serialize", "[descriptor]") {
    for (const char* name : {"fock4", "gw311_m4", "gw311_m8", "fock_frozen", "trivial_m2", "gw311_m4_doubled",
                             "gw311_m4_gauged", "product_m3", "explicit_m2", "broken_cocycle_m2"}) {
        INFO(name);
        const ModuleDescriptor d = load_descriptor(descriptor_path(name));
        const std::string text = serialize(d);
        const ModuleDescriptor again = parse_descriptor(text);
        CHECK(again == d);
        CHECK(serialize(again) == text);
    }
}

TEST_CASE("parsed fields", "[descriptor]") {
    const ModuleDescriptor d = parse_descriptor(R"({
        "modes": 3, "multiplicity": 2, "active": [3, 1],
        "measure": {"kind": "product", "p": [0.5, 0.25, 0.75]},
        "cocycle": {"kind": "gauged", "base": {"kind": "trivial"}, "seed": 11, "symmetric": false},
        "tolerance": 1e-9})");
    CHECK(d.modes == 3);
    CHECK(d.multiplicity == 2);
    CHECK(d.active == std::vector<int>{1, 3});
    CHECK(d.measure.kind == MeasureKind::product);
    CHECK(d.measure.p == std::vector<double>{0.5, 0.25, 0.75});
    CHECK(d.cocycle.kind == "gauged");
    REQUIRE(d.cocycle.base.size() == 1);
    CHECK(d.cocycle.base[0].kind == "trivial");
    CHECK(d.cocycle.seed == 11);
    CHECK_FALSE(d.cocycle.symmetric);
    CHECK(d.tolerance == 1e-9);

    const ModuleDescriptor all = parse_descriptor(
        R"({"modes": 2, "active": [1, 2], "measure": {"kind": "uniform"}, "cocycle": {"kind": "trivial"}})");
    CHECK(all.active.empty());
}

TEST_CASE("syntax errors report line and column", "[descriptor]") {
    CHECK(text_location("ab\ncd", 5) == "line 2, column 2");
    CHECK(text_location("abc", 1) == "line 1, column 1");
    const std::string location = parse_location("{\n  \"modes\": 2,\n  \"measure\": {\"kind\": \"uniform\"},,\n}");
    CHECK(location.rfind("line 3, column", 0) == 0);
    try {
        (void)load_descriptor(descriptor_path("malformed"));
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 4, column") != std::string::npos);
    }
}

TEST_CASE("schema errors carry a pointer", "[descriptor]") {
    CHECK(parse_location(R"({"modes": 2, "measure": {"kind": "uniform"}, "cocycle": {"kind": "trivial"}, "x": 1})") ==
          "/x");
    CHECK(parse_location(R"({"modes": 2, "measure": {"kind": "uniform", "p": []}, "cocycle": {"kind": "trivial"}})") ==
          "/measure/p");
    CHECK(parse_location(R"({"modes": 0, "measure": {"kind": "uniform"}, "cocycle": {"kind": "trivial"}})") ==
          "/modes");
    CHECK(parse_location(R"({"modes": 2, "measure": {"kind": "gaussian"}, "cocycle": {"kind": "trivial"}})") ==
          "/measure/kind");
    CHECK(parse_location(R"({"modes": 2, "measure": {"kind": "uniform"}})") == "/");
    CHECK(parse_location(R"({"modes": 2, "measure": {"kind": "product", "p": [0.5]}, "cocycle": {"kind": "trivial"}})") ==
          "/measure/p");
    CHECK(parse_location(
              R"({"modes": 2, "measure": {"kind": "uniform"}, "cocycle": {"kind": "explicit", "values": [{"k": 1, "x": "0", "re": 1, "im": 0}]}})") ==
          "/cocycle/values/0/x");
    CHECK(parse_location(
              R"({"modes": 2, "measure": {"kind": "uniform"}, "cocycle": {"kind": "explicit", "values": [{"k": 1, "x": "00", "re": 1, "im": 0}, {"k": 1, "x": "00", "re": 1, "im": 0}]}})") ==
          "/cocycle/values/1");
    CHECK(parse_location(R"({"modes": 2, "active": [1, 1], "measure": {"kind": "uniform"}, "cocycle": {"kind": "trivial"}})") ==
          "/active/1");
    try {
        (void)load_descriptor(descriptor_path("unknown_field"));
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("/multiplcity") != std::string::npos);
    }
    CHECK_THROWS_AS(load_descriptor(descriptor_path("does_not_exist")), ParseError);
}

TEST_CASE("building triples", "[descriptor]") {
    const Triple fock = build_triple(load_descriptor(descriptor_path("fock4")));
    CHECK(fock.modes() == 4);
    CHECK(verify_car(fock).max_residual <= 1e-12);

    const Triple gauged = build_triple(load_descriptor(descriptor_path("gw311_m4_gauged")));
    CHECK(solve(gauged).split());

    const Triple explicit_m2 = build_triple(load_descriptor(descriptor_path("explicit_m2")));
    CHECK(explicit_m2.measure().kind() == MeasureKind::explicit_table);
    CHECK_FALSE(solve(explicit_m2).split());

    const Triple doubled = build_triple(load_descriptor(descriptor_path("gw311_m4_doubled")));
    CHECK(doubled.multiplicity() == 2);

    const Triple frozen = build_triple(load_descriptor(descriptor_path("fock_frozen")));
    CHECK(frozen.active() == std::vector<int>{1, 2});

    try {
        (void)build_triple(load_descriptor(descriptor_path("broken_cocycle_m2")));
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.location() == "/cocycle");
    }
    // Mode 3 is frozen, so the full-orbit generators do not preserve the measure class.
    ModuleDescriptor d = load_descriptor(descriptor_path("fock_frozen"));
    d.active.clear();
    try {
        (void)build_triple(d);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.location() == "/measure");
    }
    ModuleDescriptor odd = parse_descriptor(R"({"modes": 3, "measure": {"kind": "uniform"}, "cocycle": {"kind": "gw311"}})");
    CHECK_THROWS_AS(build_triple(odd), ParseError);
}
