#include "blockdec/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace blockdec {

using nlohmann::json;

namespace {

const char* const kAxisKeys[kAxes] = {"axis1", "axis2", "axis3"};

std::int64_t get_int(const json& j, const std::string& where) {
    if (!j.is_number_integer()) throw ParseError(where, "expected an integer");
    return j.get<std::int64_t>();
}

const json& get_key(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object()) throw ParseError(where, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(where, std::string("missing key \"") + key + "\"");
    return *it;
}

std::string child(const std::string& where, const std::string& key) {
    return where.empty() ? key : where + "." + key;
}

std::string item(const std::string& where, std::size_t i) { return where + "[" + std::to_string(i) + "]"; }

std::array<int, kAxes> get_triple(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != kAxes) throw ParseError(where, "expected an array of 3 integers");
    std::array<int, kAxes> out{};
    for (std::size_t i = 0; i < kAxes; ++i) out[i] = static_cast<int>(get_int(j[i], item(where, i)));
    return out;
}

json point_json(const GridPoint& p) { return json::array({p[0] - 1, p[1] - 1, p[2] - 1}); }

json matrix_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const json& j, const Field& f, std::size_t rows, std::size_t cols, const std::string& where) {
    if (!j.is_array()) throw ParseError(where, "expected an array of rows");
    if (j.size() != rows) {
        throw ParseError(where, "expected " + std::to_string(rows) + " rows, found " + std::to_string(j.size()));
    }
    Matrix m(f, rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const json& row = j[r];
        if (!row.is_array() || row.size() != cols) {
            throw ParseError(item(where, r), "expected a row of " + std::to_string(cols) + " entries");
        }
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = f.from_int(get_int(row[c], item(item(where, r), c)));
    }
    return m;
}

}  // namespace

GridModule module_from_json(const json& doc, std::optional<Scalar> prime_override) {
    const std::int64_t raw_prime = prime_override ? static_cast<std::int64_t>(*prime_override)
                                                  : get_int(get_key(doc, "prime", ""), "prime");
    if (raw_prime < 2 || raw_prime >= (std::int64_t{1} << 31) || !is_prime(static_cast<std::uint64_t>(raw_prime))) {
        throw ParseError("prime", std::to_string(raw_prime) + " is not a prime below 2^31");
    }
    const Field field(static_cast<Scalar>(raw_prime));

    const auto cells = get_triple(get_key(doc, "cells", ""), "cells");
    for (std::size_t i = 0; i < kAxes; ++i) {
        if (cells[i] < 1) throw ParseError(item("cells", i), "cell counts must be >= 1");
    }
    const Grid g(cells);

    const json& jdims = get_key(doc, "dims", "");
    std::vector<std::size_t> dims(g.size(), 0);
    if (!jdims.is_array() || jdims.size() != static_cast<std::size_t>(cells[0])) {
        throw ParseError("dims", "expected " + std::to_string(cells[0]) + " planes");
    }
    for (int i = 0; i < cells[0]; ++i) {
        const json& plane = jdims[i];
        const std::string wp = item("dims", i);
        if (!plane.is_array() || plane.size() != static_cast<std::size_t>(cells[1])) {
            throw ParseError(wp, "expected " + std::to_string(cells[1]) + " rows");
        }
        for (int j = 0; j < cells[1]; ++j) {
            const json& line = plane[j];
            const std::string wl = item(wp, j);
            if (!line.is_array() || line.size() != static_cast<std::size_t>(cells[2])) {
                throw ParseError(wl, "expected " + std::to_string(cells[2]) + " entries");
            }
            for (int k = 0; k < cells[2]; ++k) {
                const std::int64_t d = get_int(line[k], item(wl, k));
                if (d < 0) throw ParseError(item(wl, k), "dimension must be non-negative");
                dims[g.index({{i + 1, j + 1, k + 1}})] = static_cast<std::size_t>(d);
            }
        }
    }

    GridModule m(field, g, std::move(dims));
    const json& maps = get_key(doc, "maps", "");
    for (std::size_t axis = 0; axis < kAxes; ++axis) {
        const std::string wa = child("maps", kAxisKeys[axis]);
        const json& list = get_key(maps, kAxisKeys[axis], "maps");
        if (!list.is_array()) throw ParseError(wa, "expected an array of step maps");
        std::vector<bool> seen(g.size(), false);
        for (std::size_t n = 0; n < list.size(); ++n) {
            const std::string we = item(wa, n);
            const auto at = get_triple(get_key(list[n], "at", we), child(we, "at"));
            const GridPoint p{{at[0] + 1, at[1] + 1, at[2] + 1}};
            if (!m.has_step(axis, p)) throw ParseError(child(we, "at"), "no step map starts at this point");
            if (seen[g.index(p)]) throw ParseError(child(we, "at"), "duplicate step map");
            seen[g.index(p)] = true;
            m.set_step(axis, p,
                       matrix_from_json(get_key(list[n], "matrix", we), field, m.dim(p.shifted(axis)), m.dim(p),
                                        child(we, "matrix")));
        }
        for (const GridPoint& p : g.points()) {
            if (m.has_step(axis, p) && !seen[g.index(p)]) {
                throw ParseError(wa, "missing step map at " + point_json(p).dump());
            }
        }
    }
    return m;
}

std::string module_to_json_text(const GridModule& m) {
    const Grid& g = m.grid();
    json dims = json::array();
    for (int i = 1; i <= g.cells(0); ++i) {
        json plane = json::array();
        for (int j = 1; j <= g.cells(1); ++j) {
            json line = json::array();
            for (int k = 1; k <= g.cells(2); ++k) line.push_back(m.dim({{i, j, k}}));
            plane.push_back(std::move(line));
        }
        dims.push_back(std::move(plane));
    }
    std::ostringstream os;
    os << "{\n";
    os << "  \"prime\": " << m.field().prime() << ",\n";
    os << "  \"cells\": " << json(g.cells()).dump() << ",\n";
    os << "  \"dims\": " << dims.dump() << ",\n";
    os << "  \"maps\": {\n";
    for (std::size_t axis = 0; axis < kAxes; ++axis) {
        os << "    \"" << kAxisKeys[axis] << "\": [";
        bool first = true;
        // points() is lexicographic, so entries come out sorted by "at".
        for (const GridPoint& p : g.points()) {
            if (!m.has_step(axis, p)) continue;
            json e = json::object();
            os << (first ? "\n" : ",\n") << "      {\"at\": " << point_json(p).dump()
               << ", \"matrix\": " << matrix_json(m.step(axis, p)).dump() << "}";
            first = false;
        }
        os << (first ? "]" : "\n    ]") << (axis + 1 < kAxes ? ",\n" : "\n");
    }
    os << "  }\n}\n";
    return os.str();
}

json block_to_json(const Block& b) {
    json j = json::object();
    const Cuboid& c = b.box();
    j["a"] = json::array({c.iv[0].a, c.iv[1].a, c.iv[2].a});
    j["b"] = json::array({c.iv[0].b, c.iv[1].b, c.iv[2].b});
    j["class"] = to_string(b.kind());
    return j;
}

Block block_from_json(const json& j, const Grid& g, const std::string& where) {
    const auto a = get_triple(get_key(j, "a", where), child(where, "a"));
    const auto b = get_triple(get_key(j, "b", where), child(where, "b"));
    Cuboid c;
    for (std::size_t i = 0; i < kAxes; ++i) c.iv[i] = {a[i], b[i]};
    const auto kind = classify(g, c);
    if (!kind) throw ParseError(where, "not a block of the grid");
    if (auto it = j.find("class"); it != j.end()) {
        if (!it->is_string() || block_class_from_string(it->get<std::string>()) != kind) {
            throw ParseError(child(where, "class"), "class does not match the block's shape");
        }
    }
    return Block(g, c);
}

json entries_to_json(const std::vector<DecompositionEntry>& entries) {
    json out = json::array();
    for (const auto& e : entries) {
        json j = block_to_json(e.block);
        j["multiplicity"] = e.multiplicity;
        out.push_back(std::move(j));
    }
    return out;
}

std::vector<DecompositionEntry> entries_from_json(const json& j, const Grid& g, const std::string& where) {
    if (!j.is_array()) throw ParseError(where, "expected an array of entries");
    std::vector<DecompositionEntry> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string we = item(where, i);
        const std::int64_t n = get_int(get_key(j[i], "multiplicity", we), child(we, "multiplicity"));
        if (n < 1) throw ParseError(child(we, "multiplicity"), "multiplicity must be >= 1");
        out.push_back({block_from_json(j[i], g, we), static_cast<std::size_t>(n)});
    }
    return out;
}

namespace {

std::string entries_block_text(const std::vector<DecompositionEntry>& entries) {
    std::ostringstream os;
    os << '[';
    const json arr = entries_to_json(entries);
    for (std::size_t i = 0; i < arr.size(); ++i) os << (i ? ",\n    " : "\n    ") << arr[i].dump();
    os << (arr.empty() ? "]" : "\n  ]");
    return os.str();
}

}  // namespace

std::string report_to_json_text(const DecompositionReport& r) {
    std::ostringstream os;
    os << "{\n  \"verified\": " << (r.verified ? "true" : "false") << ",\n";
    os << "  \"entries\": " << entries_block_text(r.entries) << ",\n";
    os << "  \"dims_check\": [";
    for (std::size_t i = 0; i < r.conservation.size(); ++i) {
        const auto& row = r.conservation[i];
        json j = json::object();
        j["at"] = point_json(row.at);
        j["dim"] = row.dim;
        j["counted"] = row.counted;
        os << (i ? ",\n    " : "\n    ") << j.dump();
    }
    os << (r.conservation.empty() ? "]" : "\n  ]") << "\n}\n";
    return os.str();
}

DecompositionReport report_from_json(const json& doc, const Grid& g) {
    DecompositionReport r;
    const json& verified = get_key(doc, "verified", "");
    if (!verified.is_boolean()) throw ParseError("verified", "expected a boolean");
    r.verified = verified.get<bool>();
    r.entries = entries_from_json(get_key(doc, "entries", ""), g, "entries");
    if (auto it = doc.find("dims_check"); it != doc.end() && it->is_array()) {
        for (std::size_t i = 0; i < it->size(); ++i) {
            const std::string w = item("dims_check", i);
            const auto at = get_triple(get_key((*it)[i], "at", w), child(w, "at"));
            r.conservation.push_back({GridPoint{{at[0] + 1, at[1] + 1, at[2] + 1}},
                                      static_cast<std::size_t>(get_int(get_key((*it)[i], "dim", w), child(w, "dim"))),
                                      static_cast<std::size_t>(
                                          get_int(get_key((*it)[i], "counted", w), child(w, "counted")))});
        }
    }
    return r;
}

std::string truth_to_json_text(const Grid& g, const std::vector<DecompositionEntry>& entries) {
    std::ostringstream os;
    os << "{\n  \"cells\": " << json(g.cells()).dump() << ",\n";
    os << "  \"entries\": " << entries_block_text(entries) << "\n}\n";
    return os.str();
}

std::string render_report_text(const DecompositionReport& r) {
    std::ostringstream os;
    os << "blocks: " << r.entries.size() << '\n';
    for (const auto& e : r.entries) {
        std::string label = e.block.to_string();
        label.resize(std::max<std::size_t>(label.size(), 40), ' ');
        os << "  " << label << "  x" << e.multiplicity << '\n';
    }
    std::size_t good = 0;
    for (const auto& row : r.conservation) good += row.dim == row.counted ? 1 : 0;
    os << "conservation: " << good << '/' << r.conservation.size() << " points match\n";
    for (const auto& row : r.conservation) {
        if (row.dim != row.counted) {
            os << "  mismatch at " << row.at.to_string() << ": dim " << row.dim << ", counted " << row.counted
               << '\n';
        }
    }
    os << "verified: " << (r.verified ? "yes" : "no") << '\n';
    return os.str();
}

std::string render_exactness_text(const ExactnessReport& r) {
    std::ostringstream os;
    if (r.unit_cells_only) {
        os << "note: unit-cells mode only checks unit squares and unit cubes; it is a heuristic, "
              "not a proof of strong exactness\n";
    }
    os << "strongly exact: " << (r.overall ? "yes" : "no") << '\n';
    os << "slice failures: " << r.slice_failures.size() << '\n';
    for (const auto& f : r.slice_failures) {
        os << "  slice axis " << f.axis + 1 << " cell " << f.index << ": square " << f.lower.to_string() << " -> "
           << f.upper.to_string() << " not exact\n";
    }
    os << "cube failures: " << r.cube_failures.size() << '\n';
    for (const auto& f : r.cube_failures) {
        os << "  " << to_string(f.which) << " s=" << f.s.to_string() << " t=" << f.t.to_string() << ": "
           << (f.which == CubeFailure::Which::psi ? "rank(psi) " : "rank(relations) ") << f.rank_found
           << " != " << f.rank_required << '\n';
    }
    return os.str();
}

std::string exactness_to_json_text(const ExactnessReport& r) {
    json j = json::object();
    j["strongly_exact"] = r.overall;
    j["mode"] = r.unit_cells_only ? "unit-cells" : "exhaustive";
    json slices = json::array();
    for (const auto& f : r.slice_failures) {
        slices.push_back({{"axis", f.axis + 1}, {"index", f.index - 1}, {"lower", point_json(f.lower)},
                          {"upper", point_json(f.upper)}});
    }
    json cubes = json::array();
    for (const auto& f : r.cube_failures) {
        cubes.push_back({{"s", point_json(f.s)}, {"t", point_json(f.t)}, {"failed", to_string(f.which)},
                         {"rank_found", f.rank_found}, {"rank_required", f.rank_required}});
    }
    j["slice_failures"] = std::move(slices);
    j["cube_failures"] = std::move(cubes);
    return j.dump(2) + "\n";
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path.string(), "cannot open file");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path.string() + " (byte " + std::to_string(e.byte) + ")", "malformed JSON");
    }
}

GridModule read_module_file(const std::filesystem::path& path, std::optional<Scalar> prime_override) {
    const json doc = read_json_file(path);
    try {
        return module_from_json(doc, prime_override);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + (e.location().empty() ? "" : ":" + e.location()),
                         std::string(e.what()).substr(e.location().empty() ? 0 : e.location().size() + 2));
    }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

}  // namespace blockdec
