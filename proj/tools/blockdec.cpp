// blockdec: check, decompose, generate and verify 3-parameter grid modules.
//
// Exit codes: 0 success, 1 semantic negative (not exact / not verified),
// 2 input error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "blockdec/decomposer.hpp"
#include "blockdec/exactness.hpp"
#include "blockdec/generator.hpp"
#include "blockdec/io.hpp"

using namespace blockdec;

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kInputError = 2;

struct Config {
    std::string input;
    std::string output;
    std::string report;
    std::optional<std::uint64_t> prime;
    std::uint64_t seed = 0;
    std::string format = "text";
    std::string mode = "exhaustive";

    std::string kind = "block-sum";
    std::vector<int> grid{3, 3, 3};
    std::size_t max_blocks = 3;
    std::size_t max_mult = 2;
    bool twist = false;
    std::string truth;
};

std::optional<Scalar> prime_override(const Config& cfg) {
    if (!cfg.prime) return std::nullopt;
    if (*cfg.prime >= (std::uint64_t{1} << 31) || !is_prime(*cfg.prime)) {
        throw ParseError("--prime", std::to_string(*cfg.prime) + " is not a prime below 2^31");
    }
    return static_cast<Scalar>(*cfg.prime);
}

void emit(const Config& cfg, const std::string& text) {
    if (cfg.output.empty()) {
        std::cout << text;
    } else {
        write_text_file(cfg.output, text);
    }
}

GridModule load_valid(const Config& cfg) {
    GridModule m = read_module_file(cfg.input, prime_override(cfg));
    const ValidationReport v = validate(m);
    if (!v.ok()) {
        throw ParseError(cfg.input, "invalid module: " + v.issues.front().message);
    }
    return m;
}

std::string render_exactness(const Config& cfg, const ExactnessReport& r) {
    return cfg.format == "json" ? exactness_to_json_text(r) : render_exactness_text(r);
}

int cmd_check(const Config& cfg) {
    const GridModule m = load_valid(cfg);
    const ExactnessReport r =
        check_strong_exactness(m, cfg.mode == "unit-cells" ? CheckMode::unit_cells : CheckMode::exhaustive);
    if (r.unit_cells_only && cfg.format == "json") {
        std::cerr << "note: unit-cells mode is a heuristic, not a proof of strong exactness\n";
    }
    emit(cfg, render_exactness(cfg, r));
    return r.overall ? kOk : kNegative;
}

int cmd_decompose(const Config& cfg) {
    const GridModule m = load_valid(cfg);
    try {
        const DecompositionReport r = decompose(m);
        emit(cfg, cfg.format == "json" ? report_to_json_text(r) : render_report_text(r));
        return r.verified ? kOk : kNegative;
    } catch (const NotStronglyExact& e) {
        std::cerr << "error: " << e.what() << '\n';
        std::cout << render_exactness(cfg, e.report());
        return kNegative;
    }
}

int cmd_generate(const Config& cfg) {
    const Field field(prime_override(cfg).value_or(kDefaultPrime));
    if (cfg.kind == "example") {
        emit(cfg, module_to_json_text(paper_example(field)));
        return kOk;
    }
    if (cfg.kind != "block-sum" && cfg.kind != "perturbed") {
        throw ParseError("--kind", "unknown kind '" + cfg.kind + "'");
    }
    for (int c : cfg.grid) {
        if (c < 1) throw ParseError("--grid", "cell counts must be >= 1");
    }
    const Grid g({cfg.grid[0], cfg.grid[1], cfg.grid[2]});
    GroundTruth truth = random_block_sum(field, g, cfg.seed, cfg.max_blocks, cfg.max_mult);
    GridModule m = truth.module;
    if (cfg.twist) m = basis_twist(m, cfg.seed);
    if (cfg.kind == "perturbed") {
        m = perturb(m, cfg.seed);
    }
    emit(cfg, module_to_json_text(m));

    std::string sidecar = cfg.truth;
    if (sidecar.empty() && !cfg.output.empty() && cfg.kind == "block-sum") sidecar = cfg.output + ".truth.json";
    if (!sidecar.empty() && cfg.kind == "block-sum") write_text_file(sidecar, truth_to_json_text(g, truth.entries));
    return kOk;
}

int cmd_verify(const Config& cfg) {
    const GridModule m = load_valid(cfg);
    const DecompositionReport r = report_from_json(read_json_file(cfg.report), m.grid());
    for (const auto& e : r.entries) {
        if (!e.block.box().valid_on(m.grid())) throw ParseError(cfg.report, "report does not match the module grid");
    }
    try {
        const ExactModule em = ExactModule::certify(m);
        const bool ok = verify_direct_sum(em, r);
        std::cout << "direct sum verified: " << (ok ? "yes" : "no") << '\n';
        return ok ? kOk : kNegative;
    } catch (const NotStronglyExact& e) {
        std::cout << "direct sum verified: no (module is not strongly exact)\n";
        return kNegative;
    }
}

int cmd_info(const Config& cfg) {
    const GridModule m = read_module_file(cfg.input, prime_override(cfg));
    const ValidationReport v = validate(m);
    const Grid& g = m.grid();
    std::cout << "prime: " << m.field().prime() << '\n';
    std::cout << "cells: " << g.cells(0) << " x " << g.cells(1) << " x " << g.cells(2) << '\n';
    std::cout << "total dimension: " << m.total_dim() << '\n';
    std::cout << "candidate blocks: " << enumerate_blocks(g).size() << '\n';
    std::cout << "valid: " << (v.ok() ? "yes" : "no") << '\n';
    for (const auto& issue : v.issues) std::cout << "  " << issue.message << '\n';
    return v.ok() ? kOk : kInputError;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Block decomposition of 3-parameter persistence modules on finite grids"};
    app.require_subcommand(1);
    Config cfg;

    auto add_common = [&](CLI::App* sub, bool needs_input) {
        if (needs_input) sub->add_option("input,--input,-i", cfg.input, "module file")->required()->check(CLI::ExistingFile);
        sub->add_option("--prime", cfg.prime, "override the field prime");
    };
    auto add_output = [&](CLI::App* sub) {
        sub->add_option("--output,-o", cfg.output, "output file (default: stdout)");
        sub->add_option("--format", cfg.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    };

    auto* check = app.add_subcommand("check", "decide 3-parameter strong exactness");
    add_common(check, true);
    add_output(check);
    check->add_option("--mode", cfg.mode, "exhaustive or unit-cells (heuristic)")
        ->check(CLI::IsMember({"exhaustive", "unit-cells"}));

    auto* dec = app.add_subcommand("decompose", "compute block multiplicities");
    add_common(dec, true);
    add_output(dec);

    auto* gen = app.add_subcommand("generate", "write a module file");
    add_common(gen, false);
    gen->add_option("--output,-o", cfg.output, "output file (default: stdout)");
    gen->add_option("--kind", cfg.kind, "block-sum, example or perturbed")
        ->check(CLI::IsMember({"block-sum", "example", "perturbed"}));
    gen->add_option("--seed", cfg.seed, "random seed");
    gen->add_option("--grid", cfg.grid, "cells per axis, e.g. 3,3,3")->delimiter(',')->expected(3);
    gen->add_option("--max-blocks", cfg.max_blocks, "at most this many distinct blocks");
    gen->add_option("--max-mult", cfg.max_mult, "multiplicities at most this");
    gen->add_flag("--twist", cfg.twist, "apply a random change of basis at every point");
    gen->add_option("--truth", cfg.truth, "ground-truth sidecar (default: <output>.truth.json)");

    auto* ver = app.add_subcommand("verify", "check that a report's blocks form a direct sum");
    add_common(ver, true);
    ver->add_option("--report,-r", cfg.report, "decomposition report (JSON)")->required()->check(CLI::ExistingFile);

    auto* info = app.add_subcommand("info", "summarize a module file");
    add_common(info, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (*check) return cmd_check(cfg);
        if (*dec) return cmd_decompose(cfg);
        if (*gen) return cmd_generate(cfg);
        if (*ver) return cmd_verify(cfg);
        if (*info) return cmd_info(cfg);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const PerturbationExhausted& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    }
    return kInputError;
}
