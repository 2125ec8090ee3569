#include "subalign/cli.hpp"

#include "subalign/errors.hpp"
#include "subalign/json_io.hpp"
#include "subalign/sampling.hpp"
#include "subalign/selftest.hpp"
#include "subalign/sweep.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace subalign {

namespace {

using nlohmann::json;

void emit(const json& j, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << j.dump(2) << '\n';
    } else {
        save_json_file(out_path, j);
    }
}

std::vector<Rational> parse_rational_list(const std::string& text) {
    std::vector<Rational> values;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ','))
        if (!item.empty()) values.push_back(rational_from_string(item));
    return values;
}

std::vector<std::size_t> parse_index_list(const std::string& text) {
    std::vector<std::size_t> values;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ','))
        if (!item.empty()) values.push_back(static_cast<std::size_t>(std::stoul(item)));
    return values;
}

struct InstanceFlags {
    std::size_t k = 3, l = 4, t = 1;
    unsigned bits = 16;
    std::uint64_t seed = 1;

    void attach(CLI::App* cmd, bool require_kl = true) {
        auto* k_opt = cmd->add_option("--k", k, "number of users");
        auto* l_opt = cmd->add_option("--l", l, "channel diversity L");
        cmd->add_option("--t", t, "coherence length T (1 = fast fading)");
        cmd->add_option("--bits", bits, "coefficient magnitude in bits");
        cmd->add_option("--seed", seed, "instance seed");
        if (require_kl) {
            k_opt->required();
            l_opt->required();
        }
    }

    ChannelInstance sample() const { return ChannelInstance::sample(k, l, t, bits, seed); }
};

} // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"subalign: exact subspace arithmetic for interference alignment"};
    app.require_subcommand(1);

    std::string out_path;

    // gen
    auto* gen = app.add_subcommand("gen", "sample a channel instance and emit its JSON");
    InstanceFlags gen_flags;
    gen_flags.attach(gen);
    gen->add_option("--out", out_path, "output file (default stdout)");

    // scheme
    auto* scheme_cmd = app.add_subcommand("scheme", "build a scheme and emit its JSON");
    InstanceFlags scheme_flags;
    scheme_flags.attach(scheme_cmd);
    std::string scheme_kind = "orthogonal";
    std::size_t scheme_d = 1;
    std::size_t scheme_restarts = 32;
    std::string pattern_path;
    scheme_cmd->add_option("--kind", scheme_kind, "orthogonal | chain | search")
        ->check(CLI::IsMember({"orthogonal", "chain", "search"}));
    scheme_cmd->add_option("--d", scheme_d, "per-user dimension (orthogonal, search)");
    scheme_cmd->add_option("--restarts", scheme_restarts, "search restarts");
    scheme_cmd->add_option("--pattern", pattern_path, "chain pattern JSON file");
    scheme_cmd->add_option("--out", out_path, "output file (default stdout)");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "check the decoding condition exactly");
    std::string verify_instance, verify_scheme;
    verify_cmd->add_option("instance", verify_instance, "instance JSON file")->required();
    verify_cmd->add_option("scheme", verify_scheme, "scheme JSON file")->required();
    verify_cmd->add_option("--out", out_path, "output file (default stdout)");

    // analyze
    auto* analyze_cmd = app.add_subcommand("analyze", "width/sparsity requirement tables");
    std::string analyze_mode, analyze_instance, analyze_scheme;
    analyze_cmd->add_option("mode", analyze_mode, "widths | sparsity")
        ->required()
        ->check(CLI::IsMember({"widths", "sparsity"}));
    analyze_cmd->add_option("instance", analyze_instance, "instance JSON file")->required();
    analyze_cmd->add_option("scheme", analyze_scheme, "scheme JSON file")->required();
    analyze_cmd->add_option("--out", out_path, "output file (default stdout)");

    // bounds
    auto* bounds_cmd = app.add_subcommand("bounds", "evaluate the bound curves");
    InstanceFlags bounds_flags;
    bounds_flags.attach(bounds_cmd);
    std::string eps_text, c_text = "1";
    bounds_cmd->add_option("--eps", eps_text, "gap parameter as an exact rational p/q");
    bounds_cmd->add_option("--c", c_text, "constant for the achievable curve (default 1)");
    bounds_cmd->add_option("--out", out_path, "output file (default stdout)");

    // walk
    auto* walk_cmd = app.add_subcommand("walk", "run the adaptive operator walk");
    InstanceFlags walk_flags;
    walk_flags.attach(walk_cmd);
    std::size_t walk_d = 2;
    std::string thresholds_text, subset_text, mode_text = "extension";
    walk_cmd->add_option("--d", walk_d, "dimension of the seeded random start subspace");
    walk_cmd->add_option("--thresholds", thresholds_text,
                         "comma-separated increasing rationals (empty = zero-step walk)");
    walk_cmd->add_option("--s", subset_text, "family indices to use (default all)");
    walk_cmd->add_option("--mode", mode_text, "extension | contraction")
        ->check(CLI::IsMember({"extension", "contraction"}));
    walk_cmd->add_option("--out", out_path, "output file (default stdout)");

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "grid sweep to CSV");
    std::string sweep_config_path, sweep_out;
    std::size_t sweep_parallel = 0;
    sweep_cmd->add_option("--config", sweep_config_path, "sweep config JSON")->required();
    sweep_cmd->add_option("--out", sweep_out, "CSV output file (default stdout)");
    sweep_cmd->add_option("--parallel", sweep_parallel, "worker threads (overrides config)");

    // selftest
    app.add_subcommand("selftest", "run the full invariant suite");

    std::vector<const char*> argv;
    argv.push_back("subalign");
    for (const auto& arg : args) argv.push_back(arg.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());

        if (gen->parsed()) {
            emit(instance_to_json(gen_flags.sample()), out_path, out);
            return kExitOk;
        }

        if (scheme_cmd->parsed()) {
            if (scheme_kind == "orthogonal") {
                emit(scheme_to_json(build_orthogonal_scheme(scheme_flags.k, scheme_flags.l,
                                                            scheme_flags.t, scheme_d)),
                     out_path, out);
                return kExitOk;
            }
            const ChannelInstance instance = scheme_flags.sample();
            if (scheme_kind == "chain") {
                if (pattern_path.empty()) throw input_error("chain schemes need --pattern");
                emit(scheme_to_json(build_chain_scheme(instance, load_json_file(pattern_path))),
                     out_path, out);
                return kExitOk;
            }
            SearchStats stats;
            const auto found =
                random_search(instance, scheme_d, scheme_restarts, scheme_flags.seed, &stats);
            if (!found) {
                json none{{"found", false}, {"trials", stats.trials}};
                emit(none, out_path, out);
                return kExitVerification;
            }
            json ok = scheme_to_json(*found);
            ok["trials"] = stats.trials;
            emit(ok, out_path, out);
            return kExitOk;
        }

        if (verify_cmd->parsed()) {
            const ChannelInstance instance = instance_from_json(load_json_file(verify_instance));
            const Scheme scheme = scheme_from_json(load_json_file(verify_scheme));
            const VerifyReport report = verify_decoding(instance, scheme);
            emit(verify_report_to_json(report), out_path, out);
            return report.feasible ? kExitOk : kExitVerification;
        }

        if (analyze_cmd->parsed()) {
            const ChannelInstance instance = instance_from_json(load_json_file(analyze_instance));
            const Scheme scheme = scheme_from_json(load_json_file(analyze_scheme));
            bool all_pass = true;
            json table;
            if (analyze_mode == "widths") {
                const auto checks = check_width_requirement(instance, scheme);
                for (const auto& c : checks) all_pass = all_pass && c.pass;
                table = width_checks_to_json(checks);
            } else {
                const auto checks = check_sparsity_requirement(instance, scheme);
                for (const auto& c : checks) all_pass = all_pass && c.pass;
                table = sparsity_checks_to_json(checks);
            }
            emit(table, out_path, out);
            return all_pass ? kExitOk : kExitVerification;
        }

        if (bounds_cmd->parsed()) {
            std::optional<Rational> eps;
            if (!eps_text.empty()) eps = rational_from_string(eps_text);
            const BoundTable table = eval_bounds(bounds_flags.k, bounds_flags.l, bounds_flags.t,
                                                 eps, rational_from_string(c_text));
            emit(bound_table_to_json(table), out_path, out);
            return kExitOk;
        }

        if (walk_cmd->parsed()) {
            const ChannelInstance instance = walk_flags.sample();
            const TFamily family = t_family(instance);
            if (family.empty())
                throw input_error("the walk needs a nonempty cross-ratio family (K >= 4)");
            std::mt19937_64 rng(substream_seed(walk_flags.seed, 0xA57));
            const Subspace w = random_subspace(rng, instance.ambient_dim(), walk_d, 9);
            std::vector<std::size_t> subset;
            if (subset_text.empty()) {
                for (std::size_t i = 1; i <= family.size(); ++i) subset.push_back(i);
            } else {
                subset = parse_index_list(subset_text);
            }
            const WalkMode mode =
                mode_text == "extension" ? WalkMode::extension : WalkMode::contraction;
            const WalkResult result =
                adaptive_walk(w, family, subset, parse_rational_list(thresholds_text), mode);
            json j = walk_result_to_json(result);
            j["dim_start"] = w.dim();
            j["avg_width_start"] = rational_to_string(average_width(w, family));
            emit(j, out_path, out);
            return kExitOk;
        }

        if (sweep_cmd->parsed()) {
            SweepConfig config = SweepConfig::from_json(load_json_file(sweep_config_path));
            if (sweep_parallel > 0) config.parallel = sweep_parallel;
            const std::string csv = sweep_to_csv(run_sweep(config));
            if (sweep_out.empty()) {
                out << csv;
            } else {
                std::ofstream file(sweep_out);
                if (!file) throw input_error("cannot write '" + sweep_out + "'");
                file << csv;
            }
            return kExitOk;
        }

        // selftest
        const auto results = run_selftest(&out);
        return all_passed(results) ? kExitOk : kExitVerification;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kExitOk;
        }
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const capacity_error& e) {
        err << "capacity error: " << e.what() << '\n';
        return kExitCapacity;
    } catch (const invariant_fault& e) {
        err << "invariant fault: " << e.what() << '\n';
        return kExitVerification;
    } catch (const input_error& e) {
        err << "input error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    }
}

} // namespace subalign
