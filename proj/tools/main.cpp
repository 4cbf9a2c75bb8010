// Command-line front door: one subcommand per operation family, expression
// inputs, machine-readable JSON reports plus a short stdout summary.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "ultracomb/limits.hpp"
#include "ultracomb/ramsey.hpp"
#include "ultracomb/report.hpp"
#include "ultracomb/setlang.hpp"
#include "ultracomb/sumset.hpp"
#include "ultracomb/ultrafilter.hpp"

using namespace ultracomb;
namespace sl = ultracomb::setlang;

namespace {

constexpr const char* kSchema = "ultracomb-report/1";

// exit codes: 0 found/pass, 1 not found within bounds (or a failed check),
// 2 input error
enum ExitCode { exit_found = 0, exit_not_found = 1, exit_input_error = 2 };

struct CommonOpts {
    std::uint64_t seed = 1;
    int workers = 1;
    std::string out = "report.json";
    bool quiet = false;
    bool print_report = false;
    bool no_report = false;
    std::string strategy = "exhaustive";
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--seed", c.seed, "random seed for seeded strategies");
    cmd->add_option("--workers", c.workers, "worker count (default 1: deterministic)");
    cmd->add_option("--out", c.out, "report path (default report.json)");
    cmd->add_flag("--quiet", c.quiet, "suppress the stdout summary");
    cmd->add_flag("--print-report", c.print_report, "also dump the report JSON to stdout");
    cmd->add_flag("--no-report", c.no_report, "skip writing the report file");
    cmd->add_option("--strategy", c.strategy, "exhaustive or greedy")
        ->check(CLI::IsMember({"exhaustive", "greedy"}));
}

SearchOptions make_search(const CommonOpts& c) {
    SearchOptions s;
    s.strategy = c.strategy == "greedy" ? SearchStrategy::greedy : SearchStrategy::exhaustive;
    s.seed = c.seed;
    s.threads = c.workers;
    return s;
}

int finish(const CommonOpts& c, Json report, const std::string& summary, int code) {
    if (!c.no_report) {
        std::ofstream out(c.out);
        out << report.dump(2) << "\n";
    }
    if (!c.quiet) std::cout << summary << "\n";
    if (c.print_report) std::cout << report.dump(2) << "\n";
    return code;
}

Json base_report(const std::string& command, const CommonOpts& c) {
    Json j;
    j["schema"] = kSchema;
    j["command"] = command;
    j["seed"] = c.seed;
    j["workers"] = c.workers;
    return j;
}

IntSet load_set(const std::string& expr, const std::string& file, int bound) {
    if (!expr.empty()) return sl::SetExpr::parse(expr, bound).eval();
    IntSet s(bound);
    std::ifstream in(file);
    if (!in) throw std::invalid_argument("cannot open set file: " + file);
    long long v;
    while (in >> v) {
        if (v < 0 || v >= bound) throw std::invalid_argument("set file value outside [0, bound)");
        s.add(static_cast<int>(v));
    }
    return s;
}

std::vector<double> load_sequence(const std::string& expr, const std::string& file, int length) {
    std::vector<double> vals;
    if (!expr.empty()) {
        auto f = sl::FuncExpr::parse(expr, {{"n", sl::Sort::integer}});
        for (int n = 1; n <= length; ++n) {
            sl::Value arg[] = {sl::Value{static_cast<long long>(n)}};
            vals.push_back(f.eval_real(arg));
        }
        return vals;
    }
    std::ifstream in(file);
    if (!in) throw std::invalid_argument("cannot open sequence file: " + file);
    double v;
    while (in >> v) vals.push_back(v);
    return vals;
}

sl::FuncExpr parse_tuple_expr(const std::string& text, int k) {
    std::vector<sl::VarSpec> vars;
    for (int s = 1; s <= k; ++s) vars.push_back({"j" + std::to_string(s), sl::Sort::integer});
    return sl::FuncExpr::parse(text, std::move(vars));
}

TensorSet tuple_predicate(const sl::FuncExpr& f, std::vector<int> dims) {
    return TensorSet::from_predicate(std::move(dims), [f](std::span<const int> t) {
        std::vector<sl::Value> args;
        args.reserve(t.size());
        for (int v : t) args.push_back(sl::Value{static_cast<long long>(v)});
        return f.eval_bool(args);
    });
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::string cur;
    for (char ch : text + ",") {
        if (ch == ',') {
            if (!cur.empty()) out.push_back(std::stoi(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

int run_check_model(const CommonOpts& c, int i, int j, int k, int map_cap, int samples) {
    ModelCheckConfig cfg;
    cfg.i_size = i;
    cfg.j_size = j;
    if (k > 0) cfg.k_size = k;
    cfg.map_target_cap = map_cap;
    cfg.sampled_maps = samples;
    cfg.seed = c.seed;
    cfg.threads = c.workers;
    auto rep = check_model(cfg);
    Json out = base_report("check-model", c);
    out["params"] = {{"i", i}, {"j", j}};
    if (k > 0) out["params"]["k"] = k;
    out["outcome"] = rep.pass() ? "pass" : "fail";
    out["result"] = report_json(rep);
    return finish(c, out, rep.text(), rep.pass() ? exit_found : exit_not_found);
}

int run_find_homogeneous(const CommonOpts& c, int k, int colors, const std::string& expr, int bound,
                         int size) {
    auto f = parse_tuple_expr(expr, k);
    Coloring coloring = [f](std::span<const int> t) {
        std::vector<sl::Value> args;
        for (int v : t) args.push_back(sl::Value{static_cast<long long>(v)});
        return static_cast<int>(f.eval_int(args));
    };
    auto res = find_homogeneous(k, bound, colors, coloring, size, make_search(c));
    Json out = base_report("find-homogeneous", c);
    out["params"] = {{"k", k}, {"colors", colors}, {"color", expr}, {"bound", bound}, {"size", size}};
    out["outcome"] = res ? "found" : "not-found";
    if (res) out["result"] = report_json(*res);
    std::string summary = res ? "homogeneous set of color " + std::to_string(res->color) + " found"
                              : "no homogeneous set within the bound";
    return finish(c, out, summary, res ? exit_found : exit_not_found);
}

int run_ramsey_large(const CommonOpts& c, int k, const std::string& pred, int bound, int size,
                     bool multi) {
    auto f = parse_tuple_expr(pred, k);
    auto x = tuple_predicate(f, std::vector<int>(static_cast<size_t>(k), bound));
    Json out = base_report(multi ? "ramsey-large--multi" : "ramsey-large", c);
    out["params"] = {{"k", k}, {"pred", pred}, {"bound", bound}, {"size", size}, {"multi", multi}};
    std::string summary;
    bool found = false;
    if (multi) {
        auto hs = multi_large(x, size, make_search(c));
        found = hs.has_value();
        if (hs) {
            out["result"] = {{"sequences", *hs}};
            summary = "staggered sequences found";
        }
    } else {
        auto h = ramsey_large(x, size, make_search(c));
        found = h.has_value();
        if (h) {
            out["result"] = {{"elements", *h}};
            summary = "large set found";
        }
    }
    out["outcome"] = found ? "found" : "not-found";
    if (!found) summary = "nothing within the bound";
    return finish(c, out, summary, found ? exit_found : exit_not_found);
}

int run_cauchy_sub(const CommonOpts& c, const std::string& expr, const std::string& file,
                   int length, int target) {
    auto vals = load_sequence(expr, file, length);
    auto w = cauchy_subsequence(vals, target, make_search(c));
    Json out = base_report("cauchy-sub", c);
    out["params"] = {{"length", static_cast<int>(vals.size())}, {"t", target}};
    if (!expr.empty()) out["params"]["expr"] = expr;
    out["outcome"] = w ? "found" : "not-found";
    if (w) out["result"] = report_json(*w);
    std::string summary = w ? "indices found, eps = " + std::to_string(w->eps)
                            : "prefix too short for the requested length";
    return finish(c, out, summary, w ? exit_found : exit_not_found);
}

int run_pattern_search(const CommonOpts& c, const std::vector<int>& grounds,
                       const std::vector<std::string>& phi_texts,
                       const std::vector<std::string>& target_texts, int depth,
                       const std::vector<int>& unordered_roles) {
    if (phi_texts.empty() || phi_texts.size() != target_texts.size())
        throw std::invalid_argument("need one --target per --phi");
    PatternSpec spec;
    int m = static_cast<int>(grounds.size());
    for (int role : unordered_roles)
        if (role < 1 || role > m) throw std::invalid_argument("--unordered role out of range");
    for (int r = 0; r < m; ++r) {
        bool ordered = true;
        for (int role : unordered_roles)
            if (role == r + 1) ordered = false;
        spec.grounds.push_back(RoleGround{grounds[static_cast<size_t>(r)], ordered});
    }
    for (size_t i = 0; i < phi_texts.size(); ++i) {
        auto values = parse_int_list(phi_texts[i]);
        int k = static_cast<int>(values.size());
        Surjection phi(k, m, values);
        std::vector<int> dims;
        for (int s = 0; s < k; ++s)
            dims.push_back(grounds[static_cast<size_t>(values[static_cast<size_t>(s)]) - 1]);
        auto f = parse_tuple_expr(target_texts[i], k);
        spec.targets.push_back(tuple_predicate(f, std::move(dims)));
        spec.phis.push_back(std::move(phi));
    }
    auto res = search_witness(spec, depth, make_search(c));
    Json out = base_report("pattern-search", c);
    out["params"] = {{"grounds", grounds}, {"phis", phi_texts}, {"targets", target_texts},
                     {"depth", depth}};
    out["outcome"] = res.witness ? "found" : "not-found";
    out["nodes"] = res.nodes;
    if (res.witness) out["result"] = witness_certificate(spec, *res.witness);
    std::string summary = res.witness ? "witness found and re-verified" : "no witness within bounds";
    return finish(c, out, summary, res.witness ? exit_found : exit_not_found);
}

int run_find_sumset(const CommonOpts& c, const std::string& mode, const std::string& set_expr,
                    const std::string& set_file, int bound, int len, int k,
                    const std::string& spec_text, bool multiplicative, bool allow_zero) {
    IntSet a = load_set(set_expr, set_file, bound);
    SumsetSearchOptions opt;
    opt.search = make_search(c);
    SumsetMode smode = multiplicative ? SumsetMode::multiplicative : SumsetMode::additive;

    Json out = base_report("find-sumset", c);
    out["params"] = {{"mode", mode}, {"set", set_expr}, {"bound", bound}, {"len", len}};
    std::optional<SumsetCertificate> cert;
    std::string summary;
    if (mode == "same") {
        SumsetSpec spec{{k}, smode, allow_zero};
        cert = find_general(a, spec, len, opt);
    } else if (mode == "full") {
        SumsetSpec spec{{1, 1}, smode, allow_zero};
        auto bc = find_full_sumset(a, len, opt);
        if (bc) cert = SumsetCertificate{spec, {bc->first, bc->second}, 0};
        if (cert) {
            auto v = verify_certificate(a, *cert);
            cert->verified_combinations = v.checks;
        }
    } else if (mode == "distinct") {
        auto bs = find_ksum_distinct(a, k, len, opt, smode, allow_zero);
        out["outcome"] = bs ? "found" : "not-found";
        if (bs) {
            out["result"] = {{"sets", *bs}};
            summary = "staggered certificate found";
        } else {
            summary = "no certificate within bounds";
        }
        return finish(c, out, summary, bs ? exit_found : exit_not_found);
    } else if (mode == "general") {
        SumsetSpec spec{parse_int_list(spec_text), smode, allow_zero};
        cert = find_general(a, spec, len, opt);
    } else {
        throw std::invalid_argument("unknown --mode: " + mode);
    }
    out["outcome"] = cert ? "found" : "not-found";
    if (cert) {
        out["result"] = report_json(*cert);
        summary = "certificate found, " + std::to_string(cert->verified_combinations) +
                  " combinations verified";
    } else {
        summary = "no certificate within bounds";
    }
    return finish(c, out, summary, cert ? exit_found : exit_not_found);
}

int run_density(const CommonOpts& c, const std::string& kind, const std::string& set_expr,
                const std::string& set_file, int bound, int max_window) {
    IntSet a = load_set(set_expr, set_file, bound);
    DensityReport rep;
    if (kind == "schnirelmann")
        rep = schnirelmann(a);
    else if (kind == "asymptotic")
        rep = asymptotic_density_bounds(a);
    else if (kind == "banach")
        rep = banach_density(a, BanachOptions{max_window, c.workers});
    else if (kind == "banach-nested")
        rep = banach_nested_tensor_formula(a, BanachOptions{max_window, c.workers});
    else
        throw std::invalid_argument("unknown --kind: " + kind);
    Json out = base_report("density", c);
    out["params"] = {{"kind", kind}, {"set", set_expr}, {"bound", bound}};
    out["outcome"] = "pass";
    out["result"] = report_json(rep);
    std::ostringstream os;
    os << kind << ": lower " << rep.lower << ", upper " << rep.upper;
    return finish(c, out, os.str(), exit_found);
}

int limit_exit(const CommonOpts& c, Json out, const LimitResult& r, const std::string& what) {
    out["outcome"] = r.status == LimitStatus::ok ? "found" : "not-found";
    out["result"] = report_json(r);
    std::string summary;
    if (r.status == LimitStatus::ok)
        summary = what + " = " + std::to_string(r.value);
    else if (r.status == LimitStatus::no_inner_limit)
        summary = "inner limit not detected at n = " + std::to_string(r.bad_n);
    else
        summary = "outer cap too small to certify the tolerance";
    return finish(c, out, summary, r.status == LimitStatus::ok ? exit_found : exit_not_found);
}

int run_double_limit(const CommonOpts& c, const std::string& expr, double tol, int ncap,
                     long long mcap) {
    auto f = sl::FuncExpr::parse(expr, {{"n", sl::Sort::integer}, {"m", sl::Sort::integer}});
    DoubleSequence ds;
    ds.eval = [f](long long n, long long m) {
        sl::Value args[] = {sl::Value{n}, sl::Value{m}};
        return f.eval_real(args);
    };
    auto r = iterated_double_limit(ds, tol, LimitCaps{ncap, mcap});
    Json out = base_report("double-limit", c);
    out["params"] = {{"expr", expr}, {"tol", tol}, {"ncap", ncap}, {"mcap", mcap}};
    return limit_exit(c, std::move(out), r, "iterated limit");
}

int run_integrate(const CommonOpts& c, const std::string& expr, double tol, int ncap,
                  long long mcap) {
    auto f = sl::FuncExpr::parse(expr, {{"x", sl::Sort::real}});
    auto r = riemann_double(
        [f](double x) {
            sl::Value args[] = {sl::Value{x}};
            return f.eval_real(args);
        },
        tol, LimitCaps{ncap, mcap});
    Json out = base_report("integrate", c);
    out["params"] = {{"expr", expr}, {"tol", tol}, {"ncap", ncap}, {"mcap", mcap}};
    return limit_exit(c, std::move(out), r, "integral");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"combinatorial engine: finite ultrafilter calculus, pattern witnesses, "
                 "sumset certificates, density and limit analysis"};
    app.require_subcommand(1);

    int default_workers = 1;
    if (const char* env = std::getenv("ULTRACOMB_WORKERS")) default_workers = std::max(1, std::atoi(env));

    int result = exit_found;
    auto guard = [&](auto&& fn) {
        return [&result, fn]() {
            try {
                result = fn();
            } catch (const sl::ParseError& e) {
                std::cerr << "input error at " << e.line << ":" << e.column << ": " << e.what()
                          << "\n";
                result = exit_input_error;
            } catch (const std::exception& e) {
                std::cerr << "input error: " << e.what() << "\n";
                result = exit_input_error;
            }
        };
    };

    // check-model
    CommonOpts cm_c;
    cm_c.workers = default_workers;
    int cm_i = 2, cm_j = 2, cm_k = 0, cm_mapcap = 3, cm_samples = 32;
    auto* cm = app.add_subcommand("check-model", "exhaustively check the calculus identities");
    add_common(cm, cm_c);
    cm->add_option("--i", cm_i, "first ground size")->required();
    cm->add_option("--j", cm_j, "second ground size")->required();
    cm->add_option("--k", cm_k, "third ground size (enables triple clauses)");
    cm->add_option("--map-cap", cm_mapcap, "exhaustive map codomain cap");
    cm->add_option("--samples", cm_samples, "sampled maps beyond the cap");
    cm->callback(guard([&] { return run_check_model(cm_c, cm_i, cm_j, cm_k, cm_mapcap, cm_samples); }));

    // find-homogeneous
    CommonOpts fh_c;
    fh_c.workers = default_workers;
    int fh_k = 2, fh_colors = 2, fh_bound = 16, fh_size = 3;
    std::string fh_expr;
    auto* fh = app.add_subcommand("find-homogeneous", "monochromatic set for a tuple coloring");
    add_common(fh, fh_c);
    fh->add_option("--k", fh_k, "tuple arity")->required();
    fh->add_option("--colors", fh_colors, "number of colors")->required();
    fh->add_option("--color", fh_expr, "coloring expression over j1..jk, values in [0, colors)")
        ->required();
    fh->add_option("--bound", fh_bound, "ground bound N")->required();
    fh->add_option("--size", fh_size, "requested homogeneous size")->required();
    fh->callback(guard([&] {
        return run_find_homogeneous(fh_c, fh_k, fh_colors, fh_expr, fh_bound, fh_size);
    }));

    // ramsey-large
    CommonOpts rl_c;
    rl_c.workers = default_workers;
    int rl_k = 2, rl_bound = 16, rl_size = 3;
    std::string rl_pred;
    bool rl_multi = false;
    auto* rl = app.add_subcommand("ramsey-large", "set whose increasing tuples stay inside a predicate");
    add_common(rl, rl_c);
    rl->add_option("--k", rl_k, "tuple arity")->required();
    rl->add_option("--pred", rl_pred, "membership predicate over j1..jk")->required();
    rl->add_option("--bound", rl_bound, "ground bound N")->required();
    rl->add_option("--size", rl_size, "requested size")->required();
    rl->add_flag("--multi", rl_multi, "search k disjoint staggered sequences instead");
    rl->callback(guard([&] { return run_ramsey_large(rl_c, rl_k, rl_pred, rl_bound, rl_size, rl_multi); }));

    // cauchy-sub
    CommonOpts cs_c;
    cs_c.workers = default_workers;
    std::string cs_expr, cs_file;
    int cs_len = 64, cs_t = 5;
    auto* cs = app.add_subcommand("cauchy-sub", "subsequence with triple-controlled gaps");
    add_common(cs, cs_c);
    cs->add_option("--expr", cs_expr, "sequence expression in n (1-based)");
    cs->add_option("--file", cs_file, "sequence file, one value per line");
    cs->add_option("--length", cs_len, "prefix length when --expr is used");
    cs->add_option("--target", cs_t, "requested subsequence length")->required();
    cs->callback(guard([&] { return run_cauchy_sub(cs_c, cs_expr, cs_file, cs_len, cs_t); }));

    // pattern-search
    CommonOpts ps_c;
    ps_c.workers = default_workers;
    std::vector<int> ps_grounds;
    std::vector<std::string> ps_phis, ps_targets;
    std::vector<int> ps_unordered;
    int ps_depth = 3;
    auto* ps = app.add_subcommand("pattern-search", "witness sequences for a family of staggered patterns");
    add_common(ps, ps_c);
    ps->add_option("--ground", ps_grounds, "ground size per role (repeat)")->required();
    ps->add_option("--phi", ps_phis, "role assignment per position, e.g. 1,2,1 (repeat)")->required();
    ps->add_option("--target", ps_targets, "membership predicate over j1..jk (one per --phi)")
        ->required();
    ps->add_option("--depth", ps_depth, "sequence length L")->required();
    ps->add_option("--unordered", ps_unordered, "1-based roles exempt from monotonicity");
    ps->callback(guard([&] {
        return run_pattern_search(ps_c, ps_grounds, ps_phis, ps_targets, ps_depth, ps_unordered);
    }));

    // find-sumset
    CommonOpts fs_c;
    fs_c.workers = default_workers;
    std::string fs_mode = "full", fs_set, fs_file, fs_spec;
    int fs_bound = 256, fs_len = 4, fs_k = 2;
    bool fs_mult = false, fs_zero = false;
    auto* fs = app.add_subcommand("find-sumset", "structured sumset certificates inside a set");
    add_common(fs, fs_c);
    fs->add_option("--mode", fs_mode, "same | distinct | full | general")->required();
    fs->add_option("--set", fs_set, "set expression");
    fs->add_option("--set-file", fs_file, "set file, one integer per line");
    fs->add_option("--bound", fs_bound, "set bound N")->required();
    fs->add_option("--len", fs_len, "certificate sequence length")->required();
    fs->add_option("--k", fs_k, "component count for same/distinct");
    fs->add_option("--spec", fs_spec, "multiplicities for general, e.g. 2,1");
    fs->add_flag("--mult", fs_mult, "multiplicative totals instead of additive");
    fs->add_flag("--allow-zero", fs_zero, "admit 0 in multiplicative candidates");
    fs->callback(guard([&] {
        return run_find_sumset(fs_c, fs_mode, fs_set, fs_file, fs_bound, fs_len, fs_k, fs_spec,
                               fs_mult, fs_zero);
    }));

    // density
    CommonOpts dn_c;
    dn_c.workers = default_workers;
    std::string dn_kind, dn_set, dn_file;
    int dn_bound = 1024, dn_window = 0;
    auto* dn = app.add_subcommand("density", "density reports for a finite set");
    add_common(dn, dn_c);
    dn->add_option("--kind", dn_kind, "schnirelmann | asymptotic | banach | banach-nested")
        ->required();
    dn->add_option("--set", dn_set, "set expression");
    dn->add_option("--set-file", dn_file, "set file, one integer per line");
    dn->add_option("--bound", dn_bound, "set bound N")->required();
    dn->add_option("--max-window", dn_window, "window length cap (0: derived from the bound)");
    dn->callback(guard([&] {
        return run_density(dn_c, dn_kind, dn_set, dn_file, dn_bound, dn_window);
    }));

    // double-limit
    CommonOpts dl_c;
    dl_c.workers = default_workers;
    std::string dl_expr;
    double dl_tol = 1e-3;
    int dl_ncap = 256;
    long long dl_mcap = 1 << 16;
    auto* dl = app.add_subcommand("double-limit", "iterated limit of a double sequence");
    add_common(dl, dl_c);
    dl->add_option("--expr", dl_expr, "expression in n and m")->required();
    dl->add_option("--tol", dl_tol, "certification tolerance");
    dl->add_option("--ncap", dl_ncap, "outer index cap");
    dl->add_option("--mcap", dl_mcap, "inner index cap");
    dl->callback(guard([&] { return run_double_limit(dl_c, dl_expr, dl_tol, dl_ncap, dl_mcap); }));

    // integrate
    CommonOpts in_c;
    in_c.workers = default_workers;
    std::string in_expr;
    double in_tol = 1e-3;
    int in_ncap = 8;
    long long in_mcap = 1 << 14;
    auto* ig = app.add_subcommand("integrate", "whole-line integral via the Riemann-sum double sequence");
    add_common(ig, in_c);
    ig->add_option("--expr", in_expr, "integrand in x")->required();
    ig->add_option("--tol", in_tol, "certification tolerance");
    ig->add_option("--ncap", in_ncap, "outer range cap");
    ig->add_option("--mcap", in_mcap, "grid refinement cap");
    ig->callback(guard([&] { return run_integrate(in_c, in_expr, in_tol, in_ncap, in_mcap); }));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_name() == "CallForHelp" ? exit_found : exit_input_error;
    }
    return result;
}
