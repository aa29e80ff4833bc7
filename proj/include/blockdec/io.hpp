#pragma once

// File formats shared with the command-line tool.
//
// Module files:
//   {"prime": p, "cells": [m1,m2,m3], "dims": [[[...]]],
//    "maps": {"axis1": [{"at": [t1,t2,t3], "matrix": [[...],...]}, ...], "axis2": [...], "axis3": [...]}}
// with 0-based coordinates in "dims" and "at". Decomposition reports:
//   {"verified": b, "entries": [{"a":[..],"b":[..],"class":"..","multiplicity":n}, ...], "dims_check": [...]}

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "blockdec/decomposer.hpp"
#include "blockdec/exactness.hpp"
#include "blockdec/grid_module.hpp"

namespace blockdec {

/// Malformed input; `location()` names the offending place, e.g. "maps.axis2[3].matrix".
class ParseError : public std::runtime_error {
public:
    ParseError(std::string location, const std::string& message)
        : std::runtime_error(location.empty() ? message : location + ": " + message), location_(std::move(location)) {}
    const std::string& location() const noexcept { return location_; }

private:
    std::string location_;
};

/// `prime_override` replaces the file's prime; entries are reduced modulo the prime in use.
GridModule module_from_json(const nlohmann::json& doc, std::optional<Scalar> prime_override = std::nullopt);
std::string module_to_json_text(const GridModule& m);

nlohmann::json block_to_json(const Block& b);
Block block_from_json(const nlohmann::json& j, const Grid& g, const std::string& where = "block");

nlohmann::json entries_to_json(const std::vector<DecompositionEntry>& entries);
std::vector<DecompositionEntry> entries_from_json(const nlohmann::json& j, const Grid& g,
                                                  const std::string& where = "entries");

std::string report_to_json_text(const DecompositionReport& r);
DecompositionReport report_from_json(const nlohmann::json& doc, const Grid& g);

/// Ground-truth sidecar written next to generated block sums.
std::string truth_to_json_text(const Grid& g, const std::vector<DecompositionEntry>& entries);

std::string render_report_text(const DecompositionReport& r);
std::string render_exactness_text(const ExactnessReport& r);
std::string exactness_to_json_text(const ExactnessReport& r);

/// Throws ParseError naming the file on unreadable or malformed JSON.
nlohmann::json read_json_file(const std::filesystem::path& path);
GridModule read_module_file(const std::filesystem::path& path, std::optional<Scalar> prime_override = std::nullopt);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace blockdec
