#include <fstream>
#include <map>
#include <regex>
#include <sstream>

#include "doctest.h"

#include "blockdec/generator.hpp"
#include "blockdec/io.hpp"

using namespace blockdec;
using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string location_of(const json& doc) {
    try {
        (void)module_from_json(doc);
    } catch (const ParseError& e) {
        return e.location();
    }
    return "<accepted>";
}

json tiny_doc() {
    return json::parse(R"({
        "prime": 5, "cells": [2,1,1], "dims": [[[1]],[[1]]],
        "maps": {"axis1": [{"at": [0,0,0], "matrix": [[3]]}], "axis2": [], "axis3": []}
    })");
}

using Multiset = std::map<std::string, std::size_t>;

Multiset from_text(const std::string& text) {
    Multiset out;
    const std::regex row(R"(^\s+(a=\(\d+,\d+,\d+\) b=\(\d+,\d+,\d+\) class=\w+)\s+x(\d+)\s*$)");
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::smatch m;
        if (std::regex_match(line, m, row)) out[m[1]] += std::stoul(m[2]);
    }
    return out;
}

Multiset from_entries(const std::vector<DecompositionEntry>& entries) {
    Multiset out;
    for (const auto& e : entries) out[e.block.to_string()] += e.multiplicity;
    return out;
}

}  // namespace

TEST_CASE("example golden file") {
    CHECK(module_to_json_text(paper_example(Field(32003))) == slurp(BLOCKDEC_GOLDEN_DIR "/example.json"));
}

TEST_CASE("module text round-trips") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Field f(seed % 2 ? 32003 : 7);
        const GridModule m = basis_twist(random_block_sum(f, Grid({3, 2, 4}), seed, 3, 2).module, seed);
        const std::string text = module_to_json_text(m);
        const GridModule back = module_from_json(json::parse(text));
        CHECK(back == m);
        CHECK(module_to_json_text(back) == text);
    }
    const GridModule zero = GridModule::zero(Field(3), Grid({1, 1, 1}));
    CHECK(module_from_json(json::parse(module_to_json_text(zero))) == zero);
}

TEST_CASE("entries are reduced and the prime can be overridden") {
    json doc = tiny_doc();
    doc["maps"]["axis1"][0]["matrix"] = json::array({json::array({-1})});
    const GridModule m = module_from_json(doc);
    CHECK(m.step(0, {{1, 1, 1}})(0, 0) == 4);
    const GridModule m7 = module_from_json(doc, 7);
    CHECK(m7.field().prime() == 7);
    CHECK(m7.step(0, {{1, 1, 1}})(0, 0) == 6);
}

TEST_CASE("parse errors name their location") {
    CHECK(location_of(tiny_doc()) == "<accepted>");
    json d;

    d = tiny_doc();
    d["prime"] = 6;
    CHECK(location_of(d) == "prime");

    d = tiny_doc();
    d.erase("cells");
    CHECK(location_of(d) == "");

    d = tiny_doc();
    d["cells"] = json::array({2, 0, 1});
    CHECK(location_of(d) == "cells[1]");

    d = tiny_doc();
    d["dims"] = json::array({json::array({json::array({1})})});
    CHECK(location_of(d) == "dims");

    d = tiny_doc();
    d["dims"][1][0][0] = -1;
    CHECK(location_of(d) == "dims[1][0][0]");

    d = tiny_doc();
    d["maps"]["axis1"][0]["matrix"] = json::array({json::array({1, 2})});
    CHECK(location_of(d) == "maps.axis1[0].matrix[0]");

    d = tiny_doc();
    d["maps"]["axis1"].push_back(d["maps"]["axis1"][0]);
    CHECK(location_of(d) == "maps.axis1[1].at");

    d = tiny_doc();
    d["maps"]["axis1"] = json::array();
    CHECK(location_of(d) == "maps.axis1");

    d = tiny_doc();
    d["maps"]["axis1"][0]["at"] = json::array({1, 0, 0});
    CHECK(location_of(d) == "maps.axis1[0].at");

    d = tiny_doc();
    d["maps"]["axis2"] = json::array({{{"at", json::array({0, 0, 0})}, {"matrix", json::array()}}});
    CHECK(location_of(d) == "maps.axis2[0].at");

    d = tiny_doc();
    d["maps"]["axis1"][0]["matrix"][0][0] = "x";
    CHECK(location_of(d) == "maps.axis1[0].matrix[0][0]");
}

TEST_CASE("report JSON round-trips and matches the text rendering") {
    const Field f(32003);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Grid g({3, 3, 4});
        const GroundTruth t = random_block_sum(f, g, seed, 3, 2);
        const DecompositionReport r = decompose(basis_twist(t.module, seed));
        const DecompositionReport back = report_from_json(json::parse(report_to_json_text(r)), g);
        CHECK(back.entries == r.entries);
        CHECK(back.verified == r.verified);
        REQUIRE(back.conservation.size() == r.conservation.size());
        for (std::size_t i = 0; i < r.conservation.size(); ++i) {
            CHECK(back.conservation[i].at == r.conservation[i].at);
            CHECK(back.conservation[i].dim == r.conservation[i].dim);
        }
        CHECK(from_text(render_report_text(r)) == from_entries(back.entries));
        CHECK(!from_entries(r.entries).empty());

        const json truth = json::parse(truth_to_json_text(g, t.entries));
        CHECK(entries_from_json(truth["entries"], g) == t.entries);
    }
}

TEST_CASE("block JSON validation") {
    const Grid g({3, 3, 3});
    CHECK_NOTHROW(block_from_json(json::parse(R"({"a":[0,1,0],"b":[3,2,3],"class":"layer2"})"), g));
    CHECK_THROWS_AS(block_from_json(json::parse(R"({"a":[0,1,0],"b":[3,2,3],"class":"birth"})"), g), ParseError);
    CHECK_THROWS_AS(block_from_json(json::parse(R"({"a":[1,1,0],"b":[2,2,3]})"), g), ParseError);
    CHECK_THROWS_AS(entries_from_json(json::parse(R"([{"a":[0,0,0],"b":[3,3,3],"multiplicity":0}])"), g),
                    ParseError);
}

TEST_CASE("exactness renderings") {
    const ExactnessReport r = check_strong_exactness(paper_example(Field(32003)));
    const std::string text = render_exactness_text(r);
    CHECK(text.find("phi s=(1,1,1) t=(2,2,2)") != std::string::npos);
    CHECK(text.find("heuristic") == std::string::npos);
    const json j = json::parse(exactness_to_json_text(r));
    CHECK(j["strongly_exact"] == false);
    CHECK(j["cube_failures"][0]["failed"] == "phi");
    CHECK(j["cube_failures"][0]["s"] == json::array({0, 0, 0}));
    const ExactnessReport fast = check_strong_exactness(paper_example(Field(32003)), CheckMode::unit_cells);
    CHECK(render_exactness_text(fast).find("heuristic") != std::string::npos);
}
