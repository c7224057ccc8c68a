// unifact: unipotent factorization toolkit CLI.
//
// Every subcommand reads/writes the JSON schemas of the core library and
// emits one report document: {"tool", "version", "config", "result"}.
// Exit codes: 0 ok, 1 domain error, 2 numeric failure, 3 I/O or schema error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "unifact/chart.hpp"
#include "unifact/components.hpp"
#include "unifact/factorize.hpp"
#include "unifact/json_io.hpp"
#include "unifact/tracker.hpp"
#include "unifact/unipotent.hpp"
#include "unifact/version.hpp"

using namespace unifact;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

// Flag values may be inline JSON or a path to a JSON file.
std::string load_json_arg(const std::string& arg) {
    if (!arg.empty() && (arg.front() == '[' || arg.front() == '{'))
        return arg;
    std::ifstream in(arg);
    if (!in)
        throw IoError("cannot open input file '" + arg + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Cplx parse_complex_flag(const std::string& s) {
    std::istringstream is(s);
    double re = 0.0, im = 0.0;
    char comma = 0;
    if (!(is >> re))
        throw IoError("complex flag must be 're' or 're,im', got '" + s + "'");
    if (is >> comma) {
        if (comma != ',' || !(is >> im))
            throw IoError("complex flag must be 're' or 're,im', got '" + s + "'");
    }
    return Cplx(re, im);
}

struct Report {
    ordered_json config = ordered_json::object();
    ordered_json result = ordered_json::object();
};

void emit(const Report& report, const std::string& command, const std::string& out_path) {
    ordered_json doc{{"tool", "unifact"},
                     {"version", UNIFACT_VERSION_STRING},
                     {"command", command},
                     {"config", report.config},
                     {"result", report.result}};
    std::string text = doc.dump(2);
    if (out_path.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out)
            throw IoError("cannot open output file '" + out_path + "'");
        out << text << "\n";
    }
}

ordered_json complex_list(const std::vector<Cplx>& v) {
    ordered_json arr = ordered_json::array();
    for (const Cplx& z : v)
        arr.push_back(ordered_json{{"re", z.real()}, {"im", z.imag()}});
    return arr;
}

std::vector<Cplx> flat_point(const std::string& arg) {
    return io::cvec_from_json(load_json_arg(arg));
}

ordered_json rank_record(const ComponentSystem& sys, const std::vector<Cplx>& point) {
    Eigen::MatrixXcd J = jacobian_at(sys, point);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(J);
    const auto& sv = svd.singularValues();
    bool submersive = sv(0) != 0.0 && sv(sv.size() - 1) > kRankTol * sv(0);
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(0) != 0.0 && sv(i) > kRankTol * sv(0))
            ++rank;
    auto chain = FactorChain::from_flat(sys.n(), sys.K(), Orientation::inverse, point);
    bool in_s = in_singular_set(chain);
    ordered_json rec{{"point", complex_list(point)},
                     {"rank", rank},
                     {"min_singular_value", sv(sv.size() - 1)},
                     {"in_S_K", in_s},
                     {"agree", submersive == !in_s}};
    return rec;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"unipotent factorization toolkit"};
    app.require_subcommand(1);
    app.fallthrough(); // --out / --term-budget are accepted after subcommands

    if (const char* env = std::getenv("UNIFACT_TERM_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0)
            set_term_budget(static_cast<std::size_t>(v));
    }

    std::string out_path;
    app.add_option("--out", out_path, "write the JSON report to this file");
    std::size_t term_budget_flag = 0;
    app.add_option("--term-budget", term_budget_flag,
                   "cap on symbolic expansion (overrides UNIFACT_TERM_BUDGET)");

    int n = 2, K = 2;
    std::string point_arg, a_arg, b_arg, matrix_arg, chain_arg, target_arg, factors_arg;
    std::string p_arg, i_arg, j_arg, start_arg, t_arg, u_arg, parity_arg = "even";
    std::string path_arg, seed_arg, samples_arg, mode_arg = "tol";
    double tol = 1e-10;
    TrackerConfig tracker_cfg;

    auto* cmd_phi = app.add_subcommand("phi", "evaluate the last-row map Phi_K at a point");
    cmd_phi->add_option("--n", n)->required();
    cmd_phi->add_option("--K", K)->required();
    cmd_phi->add_option("--point", point_arg)->required();

    auto* cmd_components = app.add_subcommand("components", "symbolic P_{k,K} via the recurrences");
    cmd_components->add_option("--n", n)->required();
    cmd_components->add_option("--K", K)->required();

    auto* cmd_jacobian = app.add_subcommand("jacobian", "Jacobian of Phi_K at a point");
    cmd_jacobian->add_option("--n", n)->required();
    cmd_jacobian->add_option("--K", K)->required();
    cmd_jacobian->add_option("--point", point_arg)->required();

    auto* cmd_singular = app.add_subcommand("singular-check", "S_K membership and rank agreement");
    cmd_singular->add_option("--n", n)->required();
    cmd_singular->add_option("--K", K)->required();
    cmd_singular->add_option("--point", point_arg)->required();

    auto* cmd_image = app.add_subcommand("singular-image", "restriction of Phi_K to S_K");
    cmd_image->add_option("--n", n)->required();
    cmd_image->add_option("--K", K)->required();

    auto* cmd_preimage = app.add_subcommand("preimage", "K=3 fiber point over a last row");
    cmd_preimage->add_option("--b", b_arg)->required();

    auto* cmd_peel = app.add_subcommand("peel", "peel the last row with a matched chain");
    cmd_peel->add_option("--matrix", matrix_arg)->required();
    cmd_peel->add_option("--chain", chain_arg)->required();
    cmd_peel->add_option("--tol", tol);

    auto* cmd_fconst = app.add_subcommand("factor-const", "factor a constant SL_n matrix");
    cmd_fconst->add_option("--matrix", matrix_arg)->required();
    cmd_fconst->add_option("--tol", tol);

    auto* cmd_fsl2 = app.add_subcommand("factor-sl2", "factor an SL_2(C[z]) matrix exactly");
    cmd_fsl2->add_option("--matrix", matrix_arg)->required();

    auto* cmd_whitehead = app.add_subcommand("whitehead", "diag(u,1/u) as five shears");
    cmd_whitehead->add_option("--u", u_arg)->required();

    auto* cmd_verify = app.add_subcommand("verify", "multiply a factor list against a target");
    cmd_verify->add_option("--target", target_arg)->required();
    cmd_verify->add_option("--factors", factors_arg)->required();
    cmd_verify->add_option("--mode", mode_arg)->check(CLI::IsMember({"exact", "tol"}));
    cmd_verify->add_option("--tol", tol);

    auto* cmd_flow = app.add_subcommand("spray-flow", "closed-form shear-field flow");
    cmd_flow->add_option("--p", p_arg)->required();
    cmd_flow->add_option("--i", i_arg)->required();
    cmd_flow->add_option("--j", j_arg)->required();
    cmd_flow->add_option("--start", start_arg)->required();
    cmd_flow->add_option("--t", t_arg)->required();

    auto* cmd_span = app.add_subcommand("span-rank", "rank of the shear fields at a point");
    cmd_span->add_option("--p", p_arg)->required();
    cmd_span->add_option("--point", start_arg)->required();

    auto* cmd_chart = app.add_subcommand("chart", "stratum fiber chart over a target");
    cmd_chart->add_option("--n", n)->required();
    cmd_chart->add_option("--K", K)->required();
    cmd_chart->add_option("--a", a_arg)->required();

    auto* cmd_stratum = app.add_subcommand("stratum", "stratum index of a target vector");
    cmd_stratum->add_option("--a", a_arg)->required();
    cmd_stratum->add_option("--parity", parity_arg)->check(CLI::IsMember({"even", "odd"}));

    auto* cmd_track = app.add_subcommand("track", "track Phi_K(Z) = b(t) along samples");
    cmd_track->add_option("--n", n)->required();
    cmd_track->add_option("--K", K)->required();
    cmd_track->add_option("--path", path_arg)->required();
    cmd_track->add_option("--seed", seed_arg)->required();
    cmd_track->add_option("--newton-tol", tracker_cfg.newton_tol);
    cmd_track->add_option("--step-cap", tracker_cfg.step_cap);

    auto* cmd_fpath = app.add_subcommand("factor-path", "factor a sampled SL_n path");
    cmd_fpath->add_option("--samples", samples_arg)->required();
    cmd_fpath->add_option("--step-cap", tracker_cfg.step_cap);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }

    if (term_budget_flag > 0)
        set_term_budget(term_budget_flag);

    Report report;
    report.config["term_budget"] = term_budget();

    try {
        if (cmd_phi->parsed()) {
            report.config.update(ordered_json{{"n", n}, {"K", K}, {"point", point_arg}});
            auto point = flat_point(point_arg);
            auto chain = FactorChain::from_flat(n, K, Orientation::inverse, point);
            report.result["phi"] = complex_list(phi_eval(chain));
            emit(report, "phi", out_path);
        } else if (cmd_components->parsed()) {
            report.config.update(ordered_json{{"n", n}, {"K", K}});
            auto sys = symbolic_components(n, K);
            ordered_json comps = ordered_json::array();
            for (const Poly& p : sys.components())
                comps.push_back(ordered_json::parse(io::poly_to_json(p)));
            report.result["n"] = n;
            report.result["K"] = K;
            report.result["components"] = comps;
            emit(report, "components", out_path);
        } else if (cmd_jacobian->parsed()) {
            report.config.update(ordered_json{{"n", n}, {"K", K}, {"point", point_arg}});
            auto sys = symbolic_components(n, K);
            auto point = flat_point(point_arg);
            Eigen::MatrixXcd J = jacobian_at(sys, point);
            ordered_json rows = ordered_json::array();
            for (int r = 0; r < J.rows(); ++r) {
                ordered_json row = ordered_json::array();
                for (int c = 0; c < J.cols(); ++c)
                    row.push_back(ordered_json{{"re", J(r, c).real()}, {"im", J(r, c).imag()}});
                rows.push_back(row);
            }
            report.result = rank_record(sys, point);
            report.result["jacobian"] = rows;
            emit(report, "jacobian", out_path);
        } else if (cmd_singular->parsed()) {
            report.config.update(ordered_json{{"n", n}, {"K", K}, {"point", point_arg}});
            auto sys = symbolic_components(n, K);
            report.result = rank_record(sys, flat_point(point_arg));
            emit(report, "singular-check", out_path);
        } else if (cmd_image->parsed()) {
            report.config.update(ordered_json{{"n", n}, {"K", K}});
            auto rep = singular_image_check(n, K);
            ordered_json restricted = ordered_json::array();
            for (const Poly& p : rep.restricted)
                restricted.push_back(ordered_json::parse(io::poly_to_json(p)));
            report.result["pass"] = rep.pass;
            report.result["restricted"] = restricted;
            report.result["failures"] = rep.failures;
            emit(report, "singular-image", out_path);
            return rep.pass ? 0 : 1;
        } else if (cmd_preimage->parsed()) {
            report.config["b"] = b_arg;
            auto b = io::cvec_from_json(load_json_arg(b_arg));
            auto Z = preimage_last_row(b);
            FactorChain chain(static_cast<int>(b.size()), Orientation::inverse);
            for (auto& pv : Z)
                chain.append(std::move(pv));
            report.result["chain"] = ordered_json::parse(io::chain_to_json(chain));
            report.result["K"] = 3;
            emit(report, "preimage", out_path);
        } else if (cmd_peel->parsed()) {
            report.config.update(
                ordered_json{{"matrix", matrix_arg}, {"chain", chain_arg}, {"tol", tol}});
            ComplexMatrix A = io::matrix_from_json(load_json_arg(matrix_arg));
            FactorChain chain = io::chain_from_json(load_json_arg(chain_arg));
            auto peel = peel_last_row(A, chain.factors(), tol);
            report.result["h"] = complex_list(peel.h);
            report.result["core"] = ordered_json::parse(io::matrix_to_json(peel.core));
            report.result["B"] = ordered_json::parse(io::matrix_to_json(peel.b_matrix));
            emit(report, "peel", out_path);
        } else if (cmd_fconst->parsed()) {
            report.config.update(ordered_json{{"matrix", matrix_arg}, {"tol", tol}});
            ComplexMatrix A = io::matrix_from_json(load_json_arg(matrix_arg));
            auto fs = factor_constant(A, tol);
            report.result = ordered_json::parse(io::factors_to_json(A.n(), fs));
            report.result["verified_error"] = verify_factorization(A, fs, tol).relative_error;
            emit(report, "factor-const", out_path);
        } else if (cmd_fsl2->parsed()) {
            report.config["matrix"] = matrix_arg;
            PolyMatrix2 A = io::poly_matrix2_from_json(load_json_arg(matrix_arg));
            auto fs = factor_sl2_poly(A);
            report.result = ordered_json::parse(io::poly_factors_to_json(fs));
            report.result["exact_match"] = verify_factorization(A, fs).match;
            emit(report, "factor-sl2", out_path);
        } else if (cmd_whitehead->parsed()) {
            report.config["u"] = u_arg;
            Cplx u = parse_complex_flag(u_arg);
            auto fs = whitehead_diag(u);
            report.result = ordered_json::parse(io::factors_to_json(2, fs));
            report.result["product"] = ordered_json::parse(io::matrix_to_json(product(2, fs)));
            emit(report, "whitehead", out_path);
        } else if (cmd_verify->parsed()) {
            report.config.update(ordered_json{
                {"target", target_arg}, {"factors", factors_arg}, {"mode", mode_arg}, {"tol", tol}});
            json target = json::parse(load_json_arg(target_arg));
            VerifyReport rep;
            if (target.contains("rows")) {
                ComplexMatrix A = io::matrix_from_json(target.dump());
                auto fs = io::factors_from_json(load_json_arg(factors_arg));
                rep = verify_factorization(A, fs, mode_arg == "exact" ? 1e-14 : tol);
            } else {
                PolyMatrix2 A = io::poly_matrix2_from_json(target.dump());
                auto fs = io::poly_factors_from_json(load_json_arg(factors_arg));
                rep = verify_factorization(A, fs);
            }
            report.result["match"] = rep.match;
            report.result["K"] = rep.factor_count;
            report.result["relative_error"] = rep.relative_error;
            emit(report, "verify", out_path);
        } else if (cmd_flow->parsed()) {
            report.config.update(
                ordered_json{{"p", p_arg}, {"i", i_arg}, {"j", j_arg}, {"t", t_arg}});
            Poly p = io::poly_from_json(load_json_arg(p_arg));
            ShearField field(p, io::varid_from_text(i_arg), io::varid_from_text(j_arg));
            PointAssignment start = io::assignment_from_json(load_json_arg(start_arg));
            auto end = shear_field_flow(field, start, parse_complex_flag(t_arg));
            report.result["end"] = ordered_json::parse(io::assignment_to_json(end));
            report.result["p_start"] = ordered_json{{"re", p.evaluate(start).real()},
                                                    {"im", p.evaluate(start).imag()}};
            report.result["p_end"] = ordered_json{{"re", p.evaluate(end).real()},
                                                  {"im", p.evaluate(end).imag()}};
            emit(report, "spray-flow", out_path);
        } else if (cmd_span->parsed()) {
            report.config.update(ordered_json{{"p", p_arg}, {"point", start_arg}});
            Poly p = io::poly_from_json(load_json_arg(p_arg));
            PointAssignment point = io::assignment_from_json(load_json_arg(start_arg));
            report.result["rank"] = span_rank(p, point);
            emit(report, "span-rank", out_path);
        } else if (cmd_chart->parsed()) {
            report.config.update(ordered_json{{"n", n}, {"K", K}, {"a", a_arg}});
            auto a = io::cvec_from_json(load_json_arg(a_arg));
            FiberChart chart = fiber_chart(n, K, a);
            report.result = ordered_json::parse(io::chart_to_json(chart));
            emit(report, "chart", out_path);
        } else if (cmd_stratum->parsed()) {
            report.config.update(ordered_json{{"a", a_arg}, {"parity", parity_arg}});
            auto a = io::cvec_from_json(load_json_arg(a_arg));
            report.result["stratum"] = stratum_index(a, parity_arg == "even");
            emit(report, "stratum", out_path);
        } else if (cmd_track->parsed()) {
            report.config.update(ordered_json{{"n", n},
                                              {"K", K},
                                              {"path", path_arg},
                                              {"seed", seed_arg},
                                              {"newton_tol", tracker_cfg.newton_tol},
                                              {"step_cap", tracker_cfg.step_cap}});
            PathProblem problem;
            problem.n = n;
            problem.K = K;
            problem.samples = io::path_samples_from_json(load_json_arg(path_arg));
            problem.seed = io::cvec_from_json(load_json_arg(seed_arg));
            problem.config = tracker_cfg;
            auto track = track_path(problem);
            report.result["points"] = ordered_json::parse(io::track_to_json(track));
            emit(report, "track", out_path);
        } else if (cmd_fpath->parsed()) {
            report.config.update(
                ordered_json{{"samples", samples_arg}, {"step_cap", tracker_cfg.step_cap}});
            auto samples = io::matrix_samples_from_json(load_json_arg(samples_arg));
            auto chains = factor_matrix_path(samples, tracker_cfg);
            report.result["samples"] = ordered_json::parse(io::chain_samples_to_json(chains));
            emit(report, "factor-path", out_path);
        }
    } catch (const Error& e) {
        Report err;
        err.config = report.config;
        err.result["error"] = e.what();
        try {
            emit(err, app.get_subcommands().front()->get_name(), out_path);
        } catch (...) {
        }
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(e.kind());
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
