#include "ultracomb/sumset.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "ultracomb/ultrafilter.hpp"

namespace ultracomb {

void SumsetSpec::validate(int arity_cap) const {
    if (multiplicities.empty()) throw std::invalid_argument("SumsetSpec: no multiplicities");
    for (int n : multiplicities)
        if (n < 1) throw std::invalid_argument("SumsetSpec: multiplicities must be >= 1");
    if (total_arity() > arity_cap) throw CapExceeded("SumsetSpec: arity cap exceeded");
}

TensorSet sum_preimage(const IntSet& a, int k) {
    if (k < 1) throw std::invalid_argument("sum_preimage: k must be >= 1");
    int bound = a.bound();
    IntSet copy = a;
    return TensorSet::from_predicate(
        std::vector<int>(static_cast<size_t>(k), bound), [copy, bound](std::span<const int> t) {
            long long s = 0;
            for (int v : t) s += v;
            return s < bound && copy.contains(static_cast<int>(s));
        });
}

TensorSet prod_preimage(const IntSet& a, int k) {
    if (k < 1) throw std::invalid_argument("prod_preimage: k must be >= 1");
    int bound = a.bound();
    IntSet copy = a;
    return TensorSet::from_predicate(
        std::vector<int>(static_cast<size_t>(k), bound), [copy, bound](std::span<const int> t) {
            long long p = 1;
            for (int v : t) {
                p *= v;
                if (p >= bound) return false;
            }
            return copy.contains(static_cast<int>(p));
        });
}

std::vector<Surjection> spec_surjections(const SumsetSpec& spec) {
    int n = spec.total_arity();
    int k = spec.k();
    std::vector<int> values;
    for (int s = 0; s < k; ++s)
        values.insert(values.end(), static_cast<size_t>(spec.multiplicities[static_cast<size_t>(s)]),
                      s + 1);
    std::sort(values.begin(), values.end());
    std::vector<Surjection> out;
    do {
        out.emplace_back(n, k, values);
    } while (std::next_permutation(values.begin(), values.end()));
    return out;
}

PatternSpec compile_spec(const SumsetSpec& spec, const IntSet& a, int arity_cap) {
    spec.validate(arity_cap);
    int n = spec.total_arity();
    PatternSpec p;
    p.phis = spec_surjections(spec);
    TensorSet preimage =
        spec.mode == SumsetMode::additive ? sum_preimage(a, n) : prod_preimage(a, n);
    p.targets.assign(p.phis.size(), preimage);
    p.grounds.assign(static_cast<size_t>(spec.k()), RoleGround{a.bound(), true});
    return p;
}

namespace {

// Candidate filter: every completion makes the top combination total at
// least this bound, so totals reaching the set bound can never verify.
// Future values of an increasing sequence are estimated from the last
// assigned position.
bool admits_value(const SumsetSpec& spec, int bound, int len, int role, int n, int value,
                  const std::vector<std::vector<int>>& partial) {
    if (spec.mode == SumsetMode::multiplicative && value == 0 && !spec.allow_zero) return false;
    int k = spec.k();
    long long total = (spec.mode == SumsetMode::additive) ? 0 : 1;
    for (int s = 0; s < k; ++s) {
        int mult = spec.multiplicities[static_cast<size_t>(s)];
        int last_pos = 0;  // 1-based position of the last known value
        long long last_val = -1;
        if (s == role) {
            last_pos = n;
            last_val = value;
        } else if (!partial.empty()) {
            const auto& seq = partial[static_cast<size_t>(s)];
            for (int p = 0; p < len; ++p) {
                if (seq[static_cast<size_t>(p)] < 0) break;
                last_pos = p + 1;
                last_val = seq[static_cast<size_t>(p)];
            }
        }
        for (int p = len - mult + 1; p <= len; ++p) {
            long long v;
            if (p <= last_pos && s == role && p == n)
                v = value;
            else if (p <= last_pos && s != role)
                v = partial[static_cast<size_t>(s)][static_cast<size_t>(p) - 1];
            else if (p <= last_pos)  // role's earlier position
                v = partial[static_cast<size_t>(s)][static_cast<size_t>(p) - 1];
            else
                v = (last_pos == 0) ? (p - 1) : last_val + (p - last_pos);
            if (spec.mode == SumsetMode::additive) {
                total += v;
            } else {
                v = std::max(v, spec.allow_zero ? 0LL : 1LL);
                if (v == 0) return true;  // a zero factor defeats the bound
                total *= v;
            }
            if (total >= bound) return false;
        }
    }
    return true;
}

SearchOptions with_bound_prune(const SumsetSpec& spec, int bound, int len,
                               const SearchOptions& base) {
    SearchOptions opt = base;
    auto prev = base.admit;
    opt.admit = [spec, bound, len, prev](int role, int n, int value,
                                         const std::vector<std::vector<int>>& partial) {
        if (prev && !prev(role, n, value, partial)) return false;
        return admits_value(spec, bound, len, role, n, value, partial);
    };
    return opt;
}

}  // namespace

std::optional<SumsetCertificate> find_general(const IntSet& a, const SumsetSpec& spec, int len,
                                              const SumsetSearchOptions& opt) {
    spec.validate(opt.arity_cap);
    if (len < 1) throw std::invalid_argument("find_general: len must be >= 1");
    PatternSpec pattern = compile_spec(spec, a, opt.arity_cap);
    SearchOptions sopt = with_bound_prune(spec, a.bound(), len, opt.search);
    auto res = search_witness(pattern, len, sopt);
    if (!res.witness) return std::nullopt;
    SumsetCertificate cert{spec, res.witness->sequences, 0};
    Verdict check = verify_certificate(a, cert);
    if (!check.pass) throw std::logic_error("find_general: certificate failed re-verification");
    cert.verified_combinations = check.checks;
    return cert;
}

std::optional<std::vector<int>> find_ksum_same(const IntSet& a, int k, int len,
                                               const SumsetSearchOptions& opt) {
    if (len < k) throw std::invalid_argument("find_ksum_same: need len >= k");
    SumsetSpec spec{{k}, SumsetMode::additive, false};
    auto cert = find_general(a, spec, len, opt);
    if (!cert) return std::nullopt;
    return cert->sets.front();
}

std::optional<std::vector<std::vector<int>>> find_ksum_distinct(const IntSet& a, int k, int len,
                                                                const SumsetSearchOptions& opt,
                                                                SumsetMode mode, bool allow_zero) {
    if (k < 1 || len < 1) throw std::invalid_argument("find_ksum_distinct: bad bounds");
    TensorSet target = mode == SumsetMode::additive ? sum_preimage(a, k) : prod_preimage(a, k);
    std::vector<RoleGround> grounds(static_cast<size_t>(k), RoleGround{a.bound(), true});
    detail::ConstraintFamily fam;
    fam.roles.resize(static_cast<size_t>(k));
    for (int s = 0; s < k; ++s) fam.roles[static_cast<size_t>(s)] = s;
    fam.strict_after.assign(k > 1 ? static_cast<size_t>(k) - 1 : 0, 1);
    fam.target = &target;

    // staggered totals only take one element per set, and strictly later
    // positions; the binding top combination uses the last position of each
    SumsetSpec bound_spec{std::vector<int>(static_cast<size_t>(k), 1), mode, allow_zero};
    SearchOptions sopt = with_bound_prune(bound_spec, a.bound(), len, opt.search);

    auto res = detail::search_families(grounds, {fam}, len, sopt);
    if (!res.witness) return std::nullopt;
    return res.witness->sequences;
}

std::optional<std::pair<std::vector<int>, std::vector<int>>> find_full_sumset(
    const IntSet& a, int len, const SumsetSearchOptions& opt) {
    if (len < 1) throw std::invalid_argument("find_full_sumset: len must be >= 1");
    SumsetSpec spec{{1, 1}, SumsetMode::additive, false};
    auto cert = find_general(a, spec, len, opt);
    auto verify_pair = [&](const std::vector<int>& b, const std::vector<int>& c) {
        for (int x : b)
            for (int y : c) {
                long long s = static_cast<long long>(x) + y;
                if (s >= a.bound() || !a.contains(static_cast<int>(s))) return false;
            }
        return true;
    };
    if (cert) {
        auto& b = cert->sets[0];
        auto& c = cert->sets[1];
        if (!verify_pair(b, c)) throw std::logic_error("find_full_sumset: pair failed direct recheck");
        return std::make_pair(b, c);
    }
    // fallback: one 2-fold sequence split at even/odd positions
    auto single = find_ksum_same(a, 2, 2 * len, opt);
    if (!single) return std::nullopt;
    std::vector<int> b, c;
    for (size_t i = 0; i < single->size(); ++i)
        ((i % 2 == 1) ? b : c).push_back((*single)[i]);  // 1-based even positions form B
    b.resize(static_cast<size_t>(len));
    c.resize(static_cast<size_t>(len));
    if (!verify_pair(b, c)) return std::nullopt;
    return std::make_pair(b, c);
}

namespace {

// all index subsets of size r from [0, len)
void choose(int len, int r, const std::function<void(std::span<const int>)>& visit) {
    std::vector<int> idx(static_cast<size_t>(r));
    auto rec = [&](auto&& self, int pos, int start) -> void {
        if (pos == r) {
            visit(idx);
            return;
        }
        for (int v = start; v < len; ++v) {
            idx[static_cast<size_t>(pos)] = v;
            self(self, pos + 1, v + 1);
        }
    };
    if (r <= len) rec(rec, 0, 0);
}

}  // namespace

Verdict verify_certificate(const IntSet& a, const SumsetCertificate& cert) {
    Verdict v;
    const auto& spec = cert.spec;
    int k = spec.k();
    if (static_cast<int>(cert.sets.size()) != k) {
        v.pass = false;
        v.violation = Violation{Violation::Kind::shape, -1, {}, {}, "set count mismatch"};
        return v;
    }
    size_t len = cert.sets.empty() ? 0 : cert.sets.front().size();
    std::set<int> seen;
    for (int s = 0; s < k; ++s) {
        const auto& set = cert.sets[static_cast<size_t>(s)];
        if (set.size() != len) {
            v.pass = false;
            v.violation = Violation{Violation::Kind::shape, -1, {}, {}, "unequal set lengths"};
            return v;
        }
        for (size_t i = 0; i < set.size(); ++i) {
            if (set[i] < 0 || set[i] >= a.bound()) {
                v.pass = false;
                v.violation = Violation{Violation::Kind::shape, -1, {}, {set[i]}, "value outside bound"};
                return v;
            }
            if (i > 0 && set[i - 1] >= set[i]) {
                v.pass = false;
                v.violation =
                    Violation{Violation::Kind::monotonicity, -1, {static_cast<int>(i) + 1}, {set[i]},
                              "set not increasing"};
                return v;
            }
            if (!seen.insert(set[i]).second) {
                v.pass = false;
                v.violation =
                    Violation{Violation::Kind::distinctness, -1, {}, {set[i]}, "sets not disjoint"};
                return v;
            }
        }
    }
    // every combination: n_s distinct picks from set s, totalled together
    std::vector<std::vector<std::vector<int>>> picks(static_cast<size_t>(k));
    for (int s = 0; s < k; ++s)
        choose(static_cast<int>(len), spec.multiplicities[static_cast<size_t>(s)],
               [&](std::span<const int> idx) {
                   std::vector<int> vals;
                   for (int i : idx) vals.push_back(cert.sets[static_cast<size_t>(s)][static_cast<size_t>(i)]);
                   picks[static_cast<size_t>(s)].push_back(std::move(vals));
               });
    for (const auto& p : picks)
        if (p.empty()) return v;  // no combinations to check; vacuously valid

    std::vector<size_t> cursor(static_cast<size_t>(k), 0);
    while (true) {
        long long total = (spec.mode == SumsetMode::additive) ? 0 : 1;
        std::vector<int> combo;
        bool overflow = false;
        for (int s = 0; s < k; ++s) {
            for (int val : picks[static_cast<size_t>(s)][cursor[static_cast<size_t>(s)]]) {
                combo.push_back(val);
                if (spec.mode == SumsetMode::additive)
                    total += val;
                else
                    total *= val;
                if (total >= a.bound()) overflow = true;
            }
        }
        ++v.checks;
        if (overflow || !a.contains(static_cast<int>(total))) {
            v.pass = false;
            v.violation = Violation{Violation::Kind::membership, -1, {}, combo,
                                    "combination total outside the set"};
            return v;
        }
        int s = k - 1;
        while (s >= 0 && ++cursor[static_cast<size_t>(s)] == picks[static_cast<size_t>(s)].size()) {
            cursor[static_cast<size_t>(s)] = 0;
            --s;
        }
        if (s < 0) break;
    }
    return v;
}

}  // namespace ultracomb
