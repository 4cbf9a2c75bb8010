#include "ultracomb/report.hpp"

namespace ultracomb {

namespace {

const char* violation_kind(Violation::Kind k) {
    switch (k) {
        case Violation::Kind::distinctness: return "distinctness";
        case Violation::Kind::monotonicity: return "monotonicity";
        case Violation::Kind::membership: return "membership";
        case Violation::Kind::shape: return "shape";
    }
    return "unknown";
}

Json trace_json(const std::vector<std::pair<int, double>>& t) {
    Json arr = Json::array();
    for (auto& [n, v] : t) arr.push_back(Json::array({n, v}));
    return arr;
}

}  // namespace

Json report_json(const ModelReport& r) {
    Json j;
    j["grounds"] = Json::array({r.config.i_size, r.config.j_size});
    if (r.config.k_size) j["grounds"].push_back(*r.config.k_size);
    j["pass"] = r.pass();
    j["total_checked"] = r.total_checked();
    Json clauses = Json::array();
    for (const auto& c : r.clauses) {
        Json cj;
        cj["name"] = c.name;
        cj["checked"] = c.checked;
        cj["pass"] = c.pass;
        if (c.counterexample) cj["counterexample"] = *c.counterexample;
        clauses.push_back(cj);
    }
    j["clauses"] = clauses;
    return j;
}

Json report_json(const Verdict& v) {
    Json j;
    j["pass"] = v.pass;
    j["checks"] = v.checks;
    if (v.violation) {
        Json vj;
        vj["kind"] = violation_kind(v.violation->kind);
        if (v.violation->phi_index >= 0) vj["phi"] = v.violation->phi_index;
        vj["index_tuple"] = v.violation->index_tuple;
        vj["value_tuple"] = v.violation->value_tuple;
        vj["detail"] = v.violation->detail;
        j["violation"] = vj;
    }
    return j;
}

Json report_json(const Witness& w) {
    Json j;
    j["depth"] = w.depth;
    j["sequences"] = w.sequences;
    return j;
}

Json report_json(const SumsetCertificate& c) {
    Json j;
    j["multiplicities"] = c.spec.multiplicities;
    j["mode"] = c.spec.mode == SumsetMode::additive ? "additive" : "multiplicative";
    j["sets"] = c.sets;
    j["verified_combinations"] = c.verified_combinations;
    return j;
}

Json report_json(const DensityReport& r) {
    Json j;
    j["method"] = r.method;
    j["lower"] = r.lower;
    j["upper"] = r.upper;
    j["slack"] = r.slack;
    j["agreement"] = r.agreement;
    j["trace_lower"] = trace_json(r.trace_lower);
    j["trace_upper"] = trace_json(r.trace_upper);
    return j;
}

Json report_json(const LimitResult& r) {
    Json j;
    switch (r.status) {
        case LimitStatus::ok: j["status"] = "ok"; break;
        case LimitStatus::no_inner_limit: j["status"] = "no-inner-limit"; break;
        case LimitStatus::cap_too_small: j["status"] = "cap-too-small"; break;
    }
    if (r.status == LimitStatus::ok) j["value"] = r.value;
    if (r.status != LimitStatus::ok) j["bad_n"] = r.bad_n;
    Json inner = Json::array();
    for (auto& [m, v] : r.inner_trace) inner.push_back(Json::array({m, v}));
    j["inner_trace"] = inner;
    j["outer_trace"] = trace_json(r.outer_trace);
    return j;
}

Json report_json(const HomogeneousSet& h) {
    Json j;
    j["elements"] = h.elements;
    j["color"] = h.color;
    return j;
}

Json report_json(const CauchyWitness& c) {
    Json j;
    j["indices"] = c.indices;
    j["eps"] = c.eps;
    return j;
}

namespace {

struct Fnv1a {
    std::uint64_t h = 1469598103934665603ull;
    void feed(std::uint64_t v) {
        for (int b = 0; b < 8; ++b) {
            h ^= (v >> (8 * b)) & 0xff;
            h *= 1099511628211ull;
        }
    }
};

}  // namespace

std::string pattern_spec_hash(const PatternSpec& spec) {
    Fnv1a f;
    f.feed(static_cast<std::uint64_t>(spec.phis.size()));
    for (const auto& phi : spec.phis) {
        f.feed(static_cast<std::uint64_t>(phi.arity));
        f.feed(static_cast<std::uint64_t>(phi.codomain));
        for (int v : phi.values) f.feed(static_cast<std::uint64_t>(v));
    }
    for (const auto& g : spec.grounds) {
        f.feed(static_cast<std::uint64_t>(g.size));
        f.feed(g.ordered ? 1 : 0);
    }
    for (const auto& t : spec.targets) {
        for (int d : t.dims()) f.feed(static_cast<std::uint64_t>(d));
        if (t.materialized()) {
            // walk the box in row-major order, packing membership bits
            std::vector<int> idx(t.dims().size(), 0);
            std::uint64_t word = 0;
            int filled = 0;
            std::uint64_t cells = t.cell_count();
            for (std::uint64_t e = 0; e < cells; ++e) {
                std::uint64_t rem = e;
                for (int a = static_cast<int>(t.dims().size()) - 1; a >= 0; --a) {
                    idx[static_cast<size_t>(a)] =
                        static_cast<int>(rem % t.dims()[static_cast<size_t>(a)]);
                    rem /= static_cast<std::uint64_t>(t.dims()[static_cast<size_t>(a)]);
                }
                word = (word << 1) | (t.member(idx) ? 1 : 0);
                if (++filled == 64) {
                    f.feed(word);
                    word = 0;
                    filled = 0;
                }
            }
            if (filled) f.feed(word);
        }
    }
    std::ostringstream os;
    os << std::hex << f.h;
    return os.str();
}

Json witness_certificate(const PatternSpec& spec, const Witness& w) {
    Json j;
    j["spec_hash"] = pattern_spec_hash(spec);
    j["depth"] = w.depth;
    j["sequences"] = w.sequences;
    Verdict v = verify_witness(spec, w);
    Json counts = Json::array();
    for (const auto& phi : spec.phis) counts.push_back(count_admissible(phi, w.depth));
    j["checks_per_arrangement"] = counts;
    j["pass"] = v.pass;
    if (v.violation) j["violation"] = report_json(v)["violation"];
    return j;
}

}  // namespace ultracomb
