// Command-line front end: norms, rearrangements, averaged-space norms,
// distances to the order-continuous ideal, criterion checks and witness
// constructions over JSON-described functions and spaces.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "rispaces/json_io.hpp"
#include "rispaces/rearrange.hpp"
#include "rispaces/suite.hpp"

using namespace rispaces;

namespace {

json load_json(const std::string& arg) {
    try {
        if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) {
            return json::parse(arg);
        }
        std::ifstream in(arg);
        if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + arg + "'");
        return json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::ParseError,
                    std::string(e.what()) + " (byte " + std::to_string(e.byte) + ")");
    }
}

struct Options {
    double tol = 1e-9;
    std::uint64_t seed = 20240901;
    std::string format = "table";
    std::string filter;
    bool require_bound_rule = false;
};

void emit(const json& j, const Options& opt) {
    if (opt.format == "json") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    // flat table fallback
    for (auto it = j.begin(); it != j.end(); ++it)
        std::cout << it.key() << ": " << it.value().dump() << "\n";
}

int run_check(const std::string& sub, const json& args, const Options& opt) {
    double tol = args.value("tol", opt.tol);
    CheckReport rep;
    if (sub == "hudzik") {
        rep = hudzik_check(fn_from_json(args.at("function")), space_from_json(args.at("space")),
                           tol);
    } else if (sub == "thm41") {
        Rat a = args.contains("a") ? scalar_from_json(args.at("a"), "a") : Rat(0);
        XRat b = args.contains("b") ? xscalar_from_json(args.at("b"), "b") : XRat::inf();
        rep = cesaro_copy_check(fn_from_json(args.at("function")), a, b,
                                space_from_json(args.at("space")), tol,
                                opt.require_bound_rule);
    } else if (sub == "thm46") {
        AnyFn f = fn_from_json(args.at("function"));
        if (!std::holds_alternative<PiecewiseFn>(f))
            throw Error(ErrorCode::UnsupportedForm, "this route needs a function input");
        rep = trivial_ideal_copy_check(std::get<PiecewiseFn>(f),
                                       space_from_json(args.at("space")), tol);
    } else if (sub == "modular") {
        double M = args.value("M", 1.0);
        rep = modular_domination_check(orlicz_from_json(args.at("F")),
                                       space_from_json(args.at("space")),
                                       fn_from_json(args.at("function")), M, tol);
    } else if (sub == "am") {
        AnyFn f = fn_from_json(args.at("function"));
        AnyFn g = fn_from_json(args.at("function2"));
        rep = am_property_probe(std::get<PiecewiseFn>(f), std::get<PiecewiseFn>(g),
                                space_from_json(args.at("space")), tol);
    } else if (sub == "discrete-oc") {
        AnyFn f = fn_from_json(args.at("function"));
        bool member = discrete_oc_membership(std::get<SeqFn>(f),
                                             space_from_json(args.at("space")), tol);
        rep.id = "discrete-oc";
        rep.add_bool_clause("C(|x|) is order continuous in the base", member);
        rep.verdict = member ? "member of the order-continuous ideal"
                             : "outside the order-continuous ideal";
    } else {
        throw Error(ErrorCode::ParseError, "unknown check '" + sub + "'");
    }
    if (opt.format == "json")
        std::cout << check_report_to_json(rep).dump(2) << "\n";
    else
        std::cout << check_report_to_table(rep);
    return rep.overall ? 0 : 1;
}

int run_job_json(const json& job, Options opt) {
    std::string command = job.value("command", "");
    if (command.empty()) throw Error(ErrorCode::ParseError, "field 'command': missing");
    json params = job.value("params", json::object());
    if (job.contains("format")) opt.format = job.at("format").get<std::string>();
    double tol = params.value("tol", opt.tol);

    if (command == "norm") {
        EvalResult r = norm(fn_from_json(job.at("function")), space_from_json(job.at("space")),
                            tol);
        emit(eval_result_to_json(r), opt);
        return 0;
    }
    if (command == "rearrange") {
        AnyFn f = fn_from_json(job.at("function"));
        json out;
        if (std::holds_alternative<PiecewiseFn>(f)) {
            auto r = rearrange(std::get<PiecewiseFn>(f), tol);
            out["fstar"] = fn_to_json(r.fstar);
            out["exact"] = r.exact;
            if (!r.exact) {
                out["lower"] = fn_to_json(r.lower);
                out["upper"] = fn_to_json(r.upper);
                out["supGap"] = r.sup_gap;
                out["epsCut"] = r.eps_cut;
            }
        } else {
            auto r = rearrange(std::get<SeqFn>(f));
            out["fstar"] = fn_to_json(r.xstar);
            out["exact"] = r.exact;
        }
        emit(out, opt);
        return 0;
    }
    if (command == "cesaro") {
        AnyFn f = fn_from_json(job.at("function"));
        AnyFn image = cesaro_apply(f);
        json out;
        out["image"] = fn_to_json(image);
        if (job.contains("space")) {
            EvalResult r = cx_norm(f, space_from_json(job.at("space")), tol);
            out["cxNorm"] = eval_result_to_json(r);
        }
        emit(out, opt);
        return 0;
    }
    if (command == "dist") {
        DistResult d = dist_oc(fn_from_json(job.at("function")),
                               space_from_json(job.at("space")), std::max(tol, 1e-9));
        emit(dist_result_to_json(d), opt);
        return 0;
    }
    if (command == "check") {
        std::string sub = job.value("check", params.value("check", ""));
        json args = job;
        if (params.contains("a")) args["a"] = params.at("a");
        if (params.contains("b")) args["b"] = params.at("b");
        if (params.contains("M")) args["M"] = params.at("M");
        args["tol"] = tol;
        return run_check(sub, args, opt);
    }
    if (command == "witness") {
        std::string kind = job.value("construction", "disjoint-blocks");
        int k = params.value("k", 4);
        WitnessFamily fam;
        if (kind == "disjoint-blocks") {
            AnyFn f = fn_from_json(job.at("function"));
            fam = build_witness_disjoint_blocks(std::get<PiecewiseFn>(f), k);
        } else if (kind == "marcinkiewicz") {
            Rat theta = scalar_from_json(params.at("theta"), "theta");
            Rat a = params.contains("a") ? scalar_from_json(params.at("a"), "a") : Rat(1);
            fam = build_witness_marcinkiewicz(theta, a, k);
        } else if (kind == "flat-lorentz") {
            fam = build_witness_flat_lorentz(phi_from_json(job.at("phi"), true), k);
        } else {
            throw Error(ErrorCode::ParseError, "unknown construction '" + kind + "'");
        }
        CheckReport rep = verify_witness(fam, space_from_json(job.at("space")),
                                         std::max(tol, 1e-9));
        if (opt.format == "json")
            std::cout << check_report_to_json(rep).dump(2) << "\n";
        else
            std::cout << check_report_to_table(rep);
        return rep.overall ? 0 : 1;
    }
    if (command == "report") {
        SuiteResult s = run_paper_suite(opt.seed, opt.filter);
        if (opt.format == "csv")
            std::cout << suite_to_csv(s);
        else if (opt.format == "json") {
            json rows = json::array();
            for (const auto& r : s.rows)
                rows.push_back({{"id", r.id},
                                {"digest", r.input_digest},
                                {"value", r.value},
                                {"errBound", r.err_bound},
                                {"target", r.target},
                                {"tol", r.tol},
                                {"pass", r.pass}});
            json out{{"seed", s.seed}, {"rows", rows}, {"wallSeconds", s.wall_seconds}};
            std::cout << out.dump(2) << "\n";
        } else {
            std::cout << suite_to_table(s);
        }
        return s.all_pass() ? 0 : 1;
    }
    throw Error(ErrorCode::ParseError, "unknown command '" + command + "'");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"norms, rearrangements and order-continuity diagnostics for "
                 "rearrangement-invariant spaces"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--tol", opt.tol, "tolerance (default 1e-9 exact layer)");
    app.add_option("--seed", opt.seed, "seed for randomized suites");
    app.add_option("--format", opt.format, "json|csv|table");
    app.add_option("--filter", opt.filter, "glob over suite row ids");
    app.add_flag("--require-bound-rule", opt.require_bound_rule,
                 "refuse copy checks without a boundedness rule for C");

    std::string fn_arg, fn2_arg, space_arg, phi_arg, F_arg, job_arg;
    std::string check_sub, construction = "disjoint-blocks";
    double a_param = 0, M_param = 1;
    std::string b_param = "inf";
    std::string theta_param = "1/2";
    int k_param = 4;

    auto add_fn = [&](CLI::App* c, bool required = true) {
        auto* o = c->add_option("--function", fn_arg, "function literal (file or inline JSON)");
        if (required) o->required();
    };
    auto add_space = [&](CLI::App* c, bool required = true) {
        auto* o = c->add_option("--space", space_arg, "space literal (file or inline JSON)");
        if (required) o->required();
    };

    auto* c_norm = app.add_subcommand("norm", "norm of f in X");
    add_fn(c_norm);
    add_space(c_norm);
    auto* c_rearr = app.add_subcommand("rearrange", "decreasing rearrangement");
    add_fn(c_rearr);
    auto* c_ces = app.add_subcommand("cesaro", "averaging operator image and CX norm");
    add_fn(c_ces);
    add_space(c_ces, false);
    auto* c_dist = app.add_subcommand("dist", "distance to the order-continuous ideal");
    add_fn(c_dist);
    add_space(c_dist);
    auto* c_check = app.add_subcommand("check", "criterion checks");
    c_check->add_option("id", check_sub, "hudzik|thm41|thm46|modular|am|discrete-oc")
        ->required();
    add_fn(c_check);
    c_check->add_option("--function2", fn2_arg, "second function (am probe)");
    add_space(c_check);
    c_check->add_option("--F", F_arg, "Orlicz generator literal (modular check)");
    c_check->add_option("--a", a_param, "window left endpoint");
    c_check->add_option("--b", b_param, "window right endpoint (or inf)");
    c_check->add_option("--M", M_param, "modular constant");
    auto* c_wit = app.add_subcommand("witness", "witness family construction");
    c_wit->add_option("id", construction, "disjoint-blocks|marcinkiewicz|flat-lorentz");
    c_wit->add_option("--function", fn_arg, "flat profile (disjoint-blocks)");
    c_wit->add_option("--phi", phi_arg, "generator literal (flat-lorentz)");
    c_wit->add_option("--theta", theta_param, "power exponent (marcinkiewicz)");
    c_wit->add_option("--a", a_param, "support cap (marcinkiewicz)");
    c_wit->add_option("--k", k_param, "members to build");
    add_space(c_wit);
    auto* c_rep = app.add_subcommand("report", "run the bundled reproduction suite");
    auto* c_job = app.add_subcommand("job", "run a job described by a JSON document");
    c_job->add_option("file", job_arg, "job file or inline JSON")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        json job;
        if (c_job->parsed()) {
            job = load_json(job_arg);
            return run_job_json(job, opt);
        }
        if (c_norm->parsed()) job["command"] = "norm";
        if (c_rearr->parsed()) job["command"] = "rearrange";
        if (c_ces->parsed()) job["command"] = "cesaro";
        if (c_dist->parsed()) job["command"] = "dist";
        if (c_rep->parsed()) job["command"] = "report";
        if (c_check->parsed()) {
            job["command"] = "check";
            job["check"] = check_sub;
            if (!fn2_arg.empty()) job["function2"] = load_json(fn2_arg);
            if (!F_arg.empty()) job["F"] = load_json(F_arg);
            job["a"] = a_param;
            job["b"] = b_param;
            job["M"] = M_param;
        }
        if (c_wit->parsed()) {
            job["command"] = "witness";
            job["construction"] = construction;
            json params;
            params["k"] = k_param;
            params["theta"] = theta_param;
            params["a"] = a_param == 0 ? 1.0 : a_param;
            job["params"] = params;
            if (!phi_arg.empty()) job["phi"] = load_json(phi_arg);
        }
        if (!fn_arg.empty()) job["function"] = load_json(fn_arg);
        if (!space_arg.empty()) job["space"] = load_json(space_arg);
        json params = job.value("params", json::object());
        params["tol"] = opt.tol;
        job["params"] = params;
        return run_job_json(job, opt);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
