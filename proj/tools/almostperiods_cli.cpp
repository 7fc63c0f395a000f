// almostperiods: exact-arithmetic calculator for valuation-ring elementary
// divisors, truncated Witt/period arithmetic, and Koszul cohomology tables.
//
// Every command reads/writes JSON (rationals as "a/b" strings) and is
// deterministic for a fixed (input, seed).  Exit codes: 0 success, 1 a
// mathematical check failed (the report names the violated invariant),
// 2 malformed input / precision exhausted / budget exceeded.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "almostperiods/json_io.hpp"
#include "almostperiods/suites.hpp"

namespace ap = almostperiods;
using ap::Json;

namespace {

std::string read_stream(const std::string& path) {
    if (path.empty() || path == "-") {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw ap::input_error("cannot open input file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const Json& j) {
    std::string text = j.dump(2);
    text += "\n";
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw ap::input_error("cannot open output file: " + path);
    out << text;
}

Json parse_json(const std::string& text) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ap::input_error("malformed JSON input");
    return j;
}

ap::ModelParams params_from_options(const std::string& params_arg, const Json* input) {
    if (!params_arg.empty()) return ap::params_from_json(parse_json(params_arg));
    if (input && input->contains("params")) return ap::params_from_json(input->at("params"));
    return ap::ModelParams{};
}

size_t env_cell_budget(size_t fallback) {
    const char* env = std::getenv("ALMOSTPERIODS_MAX_CELLS");
    if (!env) return fallback;
    try {
        return static_cast<size_t>(std::stoull(env));
    } catch (const std::exception&) {
        throw ap::input_error("ALMOSTPERIODS_MAX_CELLS is not a number");
    }
}

Json base_report() {
    Json j;
    j["schema_version"] = ap::kSchemaVersion;
    return j;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact elementary-divisor, Witt-period and Koszul-cohomology calculator"};
    app.require_subcommand(1);

    std::string input_path, output_path, params_arg, op;
    uint64_t seed = 0;
    bool have_seed = false;
    size_t budget = 1u << 20;
    bool parallel = false;

    app.add_option("--output", output_path, "output file (default stdout)")->capture_default_str();

    auto add_common = [&](CLI::App* cmd, bool needs_input) {
        if (needs_input) cmd->add_option("--input", input_path, "input file or - for stdin");
        cmd->add_option("--params", params_arg, "ModelParams as inline JSON");
        cmd->add_option("--output", output_path, "output file (default stdout)");
        return cmd;
    };

    // ---- eldiv ----
    auto* eldiv = add_common(app.add_subcommand("eldiv", "sequence calculus"), true);
    eldiv->add_option("--op", op, "lambda|dist|majorizes|shift|sum|merge")->required();

    // ---- snf ----
    auto* snf = add_common(app.add_subcommand("snf", "Smith normal form over O"), true);

    // ---- module ----
    auto* module_cmd =
        add_common(app.add_subcommand("module", "torsion module operations"), true);
    module_cmd->add_option("--op", op, "dual|cokernel|image|kernel|approx-eq|witness|exact")
        ->required();

    // ---- tower ----
    auto* tower = add_common(app.add_subcommand("tower", "Frobenius tower verifier"), false);
    int tower_r = 1, tower_kmax = 4;
    std::string tower_pert = "none";
    tower->add_option("--r", tower_r, "rank of the canonical tower");
    tower->add_option("--kmax", tower_kmax, "top level");
    tower->add_option("--perturb", tower_pert, "none|wrong-qk|broken-middle|broken-phi");

    // ---- periods ----
    auto* periods = add_common(app.add_subcommand("periods", "Witt / B_dR computations"), true);
    periods->add_option("--op", op, "xi|divxi|log-eps|bdr-eq")->required();

    // ---- linalg ----
    auto* linalg = add_common(app.add_subcommand("linalg", "Z/p^m linear algebra"), true);
    linalg->add_option("--op", op, "howell|kernel|cohomology")->required();

    // ---- koszul ----
    auto* koszul = add_common(app.add_subcommand("koszul", "Koszul cohomology tables"), false);
    int kz_n = 1, kz_L = 1, kz_m = 1;
    long long kz_p = 2;
    std::string kz_line;
    koszul->add_option("--n", kz_n, "number of commuting operators");
    koszul->add_option("--L", kz_L, "denominator level");
    koszul->add_option("--m", kz_m, "p-adic length");
    koszul->add_option("--p", kz_p, "prime");
    koszul->add_option("--line", kz_line, "single line a_1,...,a_n (numerators over p^L)");
    koszul->add_option("--budget", budget, "cell budget");
    koszul->add_flag("--parallel", parallel, "evaluate lines with OpenMP");

    // ---- as-solve ----
    auto* assolve =
        add_common(app.add_subcommand("as-solve", "solve x^p - x = a"), true);

    // ---- fd ----
    auto* fd = add_common(app.add_subcommand("fd", "finite difference operator checks"), false);
    int fd_bound = 8;
    fd->add_option("--deg-bound", fd_bound, "degree bound (<= 12)");

    // ---- check ----
    auto* check = app.add_subcommand("check", "run the verification suites");
    std::string suite = "all";
    check->add_option("--suite", suite, "suite name or all");
    check->add_option("--seed", seed, "64-bit seed (required)")->required();
    check->add_flag("--parallel", parallel, "distribute instances over OpenMP");
    check->add_option("--output", output_path, "output file (default stdout)");
    check->callback([&] { have_seed = true; });

    CLI11_PARSE(app, argc, argv);

    try {
        Json out = base_report();

        if (eldiv->parsed()) {
            Json in = parse_json(read_stream(input_path));
            ap::EldivSeq g = ap::eldiv_from_json(in.at("g"));
            if (op == "lambda") {
                out["lambda"] = ap::rational_to_json(ap::lambda(g));
            } else if (op == "dist") {
                ap::EldivSeq h = ap::eldiv_from_json(in.at("h"));
                out["dist"] = ap::rational_to_json(ap::linf_dist(g, h));
            } else if (op == "majorizes") {
                ap::EldivSeq h = ap::eldiv_from_json(in.at("h"));
                out["majorizes"] = ap::majorizes(g, h);
            } else if (op == "shift") {
                ap::Rational eps = ap::rational_from_json(in.at("eps"));
                out["result"] = ap::eldiv_to_json(ap::shift_eps(g, eps));
            } else if (op == "sum") {
                ap::EldivSeq h = ap::eldiv_from_json(in.at("h"));
                out["result"] = ap::eldiv_to_json(ap::indexwise_sum(g, h));
            } else if (op == "merge") {
                ap::EldivSeq h = ap::eldiv_from_json(in.at("h"));
                out["result"] = ap::eldiv_to_json(ap::merge_sorted(g, h));
            } else {
                throw ap::input_error("unknown eldiv op: " + op);
            }
            write_output(output_path, out);
            return 0;
        }

        if (snf->parsed()) {
            Json in = parse_json(read_stream(input_path));
            ap::PuiseuxField F(params_from_options(params_arg, &in));
            ap::MatrixOverO a = ap::matrix_from_json(F, in.at("matrix"));
            ap::SnfResult s = ap::smith_normal_form(F, a);
            out = ap::snf_to_json(F, s);
            out["schema_version"] = ap::kSchemaVersion;
            if (a.rows == a.cols && a.rows <= 7) {
                auto dv = ap::det_valuation(F, a);
                out["det_valuation"] = dv ? Json(ap::rational_to_json(*dv)) : Json("inf");
            }
            write_output(output_path, out);
            return 0;
        }

        if (module_cmd->parsed()) {
            Json in = parse_json(read_stream(input_path));
            ap::PuiseuxField F(params_from_options(params_arg, &in));
            if (op == "dual") {
                ap::FPTorsionModule m = ap::module_from_json(in.at("module"));
                out["result"] = ap::module_to_json(ap::dual(m));
                out["almost_zero"] = ap::almost_zero(m);
            } else if (op == "cokernel" || op == "image" || op == "kernel") {
                ap::FPTorsionModule src = ap::module_from_json(in.at("source"));
                ap::FPTorsionModule tgt = ap::module_from_json(in.at("target"));
                ap::ModuleMap f =
                    ap::make_map(F, src, tgt, ap::matrix_from_json(F, in.at("matrix")));
                if (op == "cokernel")
                    out["result"] = ap::module_to_json(ap::map_cokernel(F, f));
                else if (op == "image")
                    out["result"] = ap::eldiv_to_json(ap::map_image_divisors(F, f));
                else
                    out["result"] = ap::eldiv_to_json(ap::map_kernel_divisors(F, f));
            } else if (op == "approx-eq" || op == "witness") {
                ap::FPTorsionModule m = ap::module_from_json(in.at("m"));
                ap::FPTorsionModule n = ap::module_from_json(in.at("n"));
                ap::Rational eps = ap::rational_from_json(in.at("eps"));
                bool eq = ap::approx_eq(m, n, eps);
                out["approx_eq"] = eq;
                if (op == "witness") {
                    auto w = ap::witness_maps(F, m, n, eps);
                    if (w) {
                        out["f"] = ap::matrix_to_json(F, w->f.matrix);
                        out["g"] = ap::matrix_to_json(F, w->g.matrix);
                    } else {
                        out["witness"] = nullptr;
                    }
                }
            } else if (op == "exact") {
                ap::FPTorsionModule m1 = ap::module_from_json(in.at("left"));
                ap::FPTorsionModule mm = ap::module_from_json(in.at("middle"));
                ap::FPTorsionModule m2 = ap::module_from_json(in.at("right"));
                ap::ModuleMap f =
                    ap::make_map(F, m1, mm, ap::matrix_from_json(F, in.at("f")));
                ap::ModuleMap g =
                    ap::make_map(F, mm, m2, ap::matrix_from_json(F, in.at("g")));
                ap::ExactReport rep = ap::exact_sequence_check(F, f, g);
                out["report"] = ap::exact_report_to_json(rep);
                write_output(output_path, out);
                return rep.exact && rep.lambda_additive && rep.majorization_ok ? 0 : 1;
            } else {
                throw ap::input_error("unknown module op: " + op);
            }
            write_output(output_path, out);
            return 0;
        }

        if (tower->parsed()) {
            ap::PuiseuxField F(params_from_options(params_arg, nullptr));
            ap::TowerPerturbation pert = ap::TowerPerturbation::none;
            if (tower_pert == "wrong-qk") pert = ap::TowerPerturbation::wrong_qk;
            else if (tower_pert == "broken-middle") pert = ap::TowerPerturbation::broken_middle;
            else if (tower_pert == "broken-phi") pert = ap::TowerPerturbation::broken_phi;
            else if (tower_pert != "none") throw ap::input_error("unknown perturbation");
            ap::TowerReport rep = ap::frobenius_tower_check(F, tower_r, tower_kmax, pert);
            out["report"] = ap::tower_report_to_json(rep);
            write_output(output_path, out);
            return rep.all_ok ? 0 : 1;
        }

        if (periods->parsed()) {
            Json in = parse_json(read_stream(input_path));
            ap::PuiseuxField F(params_from_options(params_arg, &in));
            ap::WittRing W(F);
            if (op == "xi") {
                out["xi"] = ap::witt_to_json(W, W.xi());
            } else if (op == "divxi") {
                ap::WittElem y = ap::witt_from_json(W, in.at("y"));
                ap::WittRing::XiDivision d = W.divide_by_xi(y);
                out["success"] = d.success;
                if (d.success) out["quotient"] = ap::witt_to_json(W, d.quotient);
                else {
                    out["obstruction_digit"] = d.obstruction_digit;
                    out["decisive"] = d.decisive;
                }
            } else if (op == "log-eps") {
                ap::BdrRing B(W);
                out["t_dR"] = ap::bdr_to_json(B, B.log_epsilon());
            } else if (op == "bdr-eq") {
                ap::BdrRing B(W);
                ap::BdRElem a = ap::bdr_from_json(B, in.at("a"));
                ap::BdRElem b = ap::bdr_from_json(B, in.at("b"));
                ap::TriBool eq = B.eq(a, b);
                out["equal"] = eq == ap::TriBool::yes
                                   ? "yes"
                                   : (eq == ap::TriBool::no ? "no" : "indeterminate");
            } else {
                throw ap::input_error("unknown periods op: " + op);
            }
            write_output(output_path, out);
            return 0;
        }

        if (linalg->parsed()) {
            Json in = parse_json(read_stream(input_path));
            if (op == "howell") {
                ap::ZpmMatrix a = ap::zpm_from_json(in.at("a"));
                ap::HowellResult h = ap::howell_form(a);
                out["h"] = ap::zpm_to_json(h.h);
                out["u"] = ap::zpm_to_json(h.u);
                out["padded_rows"] = h.padded_rows;
            } else if (op == "kernel") {
                ap::ZpmMatrix a = ap::zpm_from_json(in.at("a"));
                ap::ZpmMatrix k = ap::kernel_basis_cols(a);
                // generating rows, per the interface convention
                ap::ZpmMatrix rows = ap::zpm_make(a.p, a.m, k.cols, k.rows);
                for (size_t i = 0; i < k.rows; ++i)
                    for (size_t j = 0; j < k.cols; ++j) rows.at(j, i) = k.at(i, j);
                out["kernel_rows"] = ap::zpm_to_json(rows);
            } else if (op == "cohomology") {
                ap::ZpmMatrix din = ap::zpm_from_json(in.at("d_in"));
                ap::ZpmMatrix dout = ap::zpm_from_json(in.at("d_out"));
                ap::CohomologyShape s = ap::zpm_cohomology(din, dout);
                out["result"] = ap::shape_to_json(s, din.m);
            } else {
                throw ap::input_error("unknown linalg op: " + op);
            }
            write_output(output_path, out);
            return 0;
        }

        if (koszul->parsed()) {
            size_t cap = env_cell_budget(budget);
            if (!kz_line.empty()) {
                std::vector<long long> nums;
                std::stringstream ss(kz_line);
                std::string part;
                while (std::getline(ss, part, ',')) nums.push_back(std::stoll(part));
                ap::KoszulLine line = ap::line_cohomology(kz_p, kz_m, kz_n, kz_L, nums);
                ap::CohomTable t;
                t.p = kz_p;
                t.n = kz_n;
                t.L = kz_L;
                t.m = kz_m;
                t.lines.push_back(line);
                out["line"] = ap::cohom_table_to_json(t)["lines"][0];
                write_output(output_path, out);
                return 0;
            }
            ap::TableOptions opts;
            opts.budget = std::min(cap, budget);
            opts.parallel = parallel;
            ap::CohomTable t = ap::full_table(kz_p, kz_n, kz_L, kz_m, opts);
            out["table"] = ap::cohom_table_to_json(t);
            write_output(output_path, out);
            return t.all_ok ? 0 : 1;
        }

        if (assolve->parsed()) {
            Json in = parse_json(read_stream(input_path));
            ap::PuiseuxField F(params_from_options(params_arg, &in));
            ap::PuiseuxElem a = F.parse(in.at("a").get<std::string>());
            ap::PuiseuxElem x = F.artin_schreier_solve(a);
            out["x"] = F.to_string(x);
            ap::PuiseuxElem residual = F.sub(F.sub(F.pow(x, F.params().p), x), a);
            out["residual_zero"] = F.is_zero(residual);
            write_output(output_path, out);
            return F.is_zero(residual) ? 0 : 1;
        }

        if (fd->parsed()) {
            ap::FiniteDifferenceReport rep = ap::finite_difference_cohomology(fd_bound);
            out["report"] = ap::fd_report_to_json(rep);
            write_output(output_path, out);
            return rep.all_ok ? 0 : 1;
        }

        if (check->parsed()) {
            if (!have_seed) throw ap::input_error("check requires --seed");
            if (suite == "all") {
                Json report = ap::run_all_suites(seed, parallel);
                write_output(output_path, report);
                return ap::report_all_pass(report) ? 0 : 1;
            }
            ap::SuiteOutcome o = ap::run_suite(suite, seed, parallel);
            out["name"] = o.name;
            out["pass"] = o.pass;
            out["checked"] = o.checked;
            if (!o.detail.empty()) out["detail"] = o.detail;
            write_output(output_path, out);
            return o.pass ? 0 : 1;
        }
    } catch (const ap::precision_error& e) {
        std::cerr << "precision: " << e.what() << "\n";
        return 2;
    } catch (const ap::budget_error& e) {
        std::cerr << "budget: " << e.what() << "\n";
        return 2;
    } catch (const ap::input_error& e) {
        std::cerr << "input: " << e.what() << "\n";
        return 2;
    } catch (const ap::error& e) {
        std::cerr << "check failed: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
