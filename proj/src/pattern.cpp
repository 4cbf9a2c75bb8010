#include "ultracomb/pattern.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ultracomb {

// ---------------------------------------------------------------------------
// TensorSet
// ---------------------------------------------------------------------------

bool TensorSet::should_materialize(const std::vector<int>& dims) {
    if (dims.size() > 3) return false;
    for (int d : dims)
        if (d > 64) return false;
    return true;
}

std::uint64_t TensorSet::flat_index(std::span<const int> t) const {
    std::uint64_t e = 0;
    for (size_t a = 0; a < dims_.size(); ++a) {
        int i = t[a];
        if (i < 0 || i >= dims_[a]) throw std::out_of_range("TensorSet: tuple outside the box");
        e = e * static_cast<std::uint64_t>(dims_[a]) + static_cast<std::uint64_t>(i);
    }
    return e;
}

TensorSet TensorSet::dense(std::vector<int> dims) {
    TensorSet s;
    s.dims_ = std::move(dims);
    for (int d : s.dims_)
        if (d < 1) throw std::invalid_argument("TensorSet: dimension must be >= 1");
    s.bits_.assign(static_cast<size_t>((s.cell_count() + 63) / 64), 0);
    return s;
}

TensorSet TensorSet::from_predicate(std::vector<int> dims, Predicate p) {
    for (int d : dims)
        if (d < 1) throw std::invalid_argument("TensorSet: dimension must be >= 1");
    if (!should_materialize(dims)) {
        TensorSet s;
        s.dims_ = std::move(dims);
        s.pred_ = std::move(p);
        return s;
    }
    TensorSet s = dense(dims);
    std::vector<int> t(s.dims_.size(), 0);
    std::uint64_t cells = s.cell_count();
    for (std::uint64_t e = 0; e < cells; ++e) {
        std::uint64_t rem = e;
        for (int a = static_cast<int>(s.dims_.size()) - 1; a >= 0; --a) {
            t[static_cast<size_t>(a)] = static_cast<int>(rem % s.dims_[static_cast<size_t>(a)]);
            rem /= static_cast<std::uint64_t>(s.dims_[static_cast<size_t>(a)]);
        }
        if (p(t)) s.bits_[e >> 6] |= std::uint64_t{1} << (e & 63);
    }
    return s;
}

bool TensorSet::member(std::span<const int> t) const {
    if (t.size() != dims_.size()) throw std::invalid_argument("TensorSet: arity mismatch");
    if (!bits_.empty() || !pred_) {
        std::uint64_t e = flat_index(t);
        return (bits_[e >> 6] >> (e & 63)) & 1u;
    }
    for (size_t a = 0; a < dims_.size(); ++a)
        if (t[a] < 0 || t[a] >= dims_[a]) throw std::out_of_range("TensorSet: tuple outside the box");
    return pred_(t);
}

void TensorSet::set(std::span<const int> t, bool value) {
    if (!materialized()) throw std::logic_error("TensorSet: set on a lazy predicate");
    std::uint64_t e = flat_index(t);
    if (value)
        bits_[e >> 6] |= std::uint64_t{1} << (e & 63);
    else
        bits_[e >> 6] &= ~(std::uint64_t{1} << (e & 63));
}

TensorSet superdiagonal(int k, int N) {
    if (k < 1 || N < 1) throw std::invalid_argument("superdiagonal: k and N must be >= 1");
    return TensorSet::from_predicate(std::vector<int>(static_cast<size_t>(k), N),
                                     [](std::span<const int> t) {
                                         for (size_t s = 1; s < t.size(); ++s)
                                             if (t[s - 1] >= t[s]) return false;
                                         return true;
                                     });
}

// ---------------------------------------------------------------------------
// Surjections, admissibility, good orderings
// ---------------------------------------------------------------------------

Surjection::Surjection(int k, int m, std::vector<int> vals)
    : arity(k), codomain(m), values(std::move(vals)) {
    if (k < 1 || m < 1 || static_cast<int>(values.size()) != k)
        throw std::invalid_argument("Surjection: bad shape");
    std::vector<char> seen(static_cast<size_t>(m), 0);
    for (int v : values) {
        if (v < 1 || v > m) throw std::invalid_argument("Surjection: value out of range");
        seen[static_cast<size_t>(v) - 1] = 1;
    }
    for (char s : seen)
        if (!s) throw std::invalid_argument("Surjection: not onto");
}

Surjection Surjection::identity(int k) {
    std::vector<int> v(static_cast<size_t>(k));
    std::iota(v.begin(), v.end(), 1);
    return {k, k, std::move(v)};
}

bool is_admissible(const Surjection& phi, std::span<const int> j) {
    if (static_cast<int>(j.size()) != phi.arity)
        throw std::invalid_argument("is_admissible: arity mismatch");
    for (int s = 0; s + 1 < phi.arity; ++s) {
        if (j[static_cast<size_t>(s)] > j[static_cast<size_t>(s) + 1]) return false;
        if (phi.values[static_cast<size_t>(s)] >= phi.values[static_cast<size_t>(s) + 1] &&
            j[static_cast<size_t>(s)] >= j[static_cast<size_t>(s) + 1])
            return false;
    }
    return true;
}

GoodOrdering good_ordering(std::span<const int> j) {
    if (j.empty()) throw std::invalid_argument("good_ordering: empty tuple");
    GoodOrdering g;
    g.sigma.resize(j.size());
    std::iota(g.sigma.begin(), g.sigma.end(), 1);
    // least position holding the least remaining value, repeatedly
    std::stable_sort(g.sigma.begin(), g.sigma.end(),
                     [&](int a, int b) { return j[static_cast<size_t>(a) - 1] < j[static_cast<size_t>(b) - 1]; });
    return g;
}

bool is_good_ordering(const GoodOrdering& g, std::span<const int> j) {
    size_t k = j.size();
    if (g.sigma.size() != k) throw std::invalid_argument("is_good_ordering: size mismatch");
    std::vector<char> seen(k, 0);
    for (int p : g.sigma) {
        if (p < 1 || static_cast<size_t>(p) > k || seen[static_cast<size_t>(p) - 1])
            throw std::invalid_argument("is_good_ordering: not a permutation");
        seen[static_cast<size_t>(p) - 1] = 1;
    }
    for (size_t s = 0; s + 1 < k; ++s) {
        int a = j[static_cast<size_t>(g.sigma[s]) - 1];
        int b = j[static_cast<size_t>(g.sigma[s + 1]) - 1];
        if (a > b) return false;
        if (g.sigma[s] > g.sigma[s + 1] && a >= b) return false;
    }
    return true;
}

namespace {

void enumerate_tuples(const std::vector<std::uint8_t>& strict_after, int k, int L,
                      const std::function<void(std::span<const int>)>& visit) {
    std::vector<int> j(static_cast<size_t>(k), 0);
    auto rec = [&](auto&& self, int s) -> void {
        if (s == k) {
            visit(j);
            return;
        }
        int lo = 1;
        if (s > 0) lo = j[static_cast<size_t>(s) - 1] + (strict_after[static_cast<size_t>(s) - 1] ? 1 : 0);
        for (int v = lo; v <= L; ++v) {
            j[static_cast<size_t>(s)] = v;
            self(self, s + 1);
        }
    };
    if (L >= 1) rec(rec, 0);
}

std::vector<std::uint8_t> strict_flags(const Surjection& phi) {
    std::vector<std::uint8_t> f(static_cast<size_t>(phi.arity) - 1, 0);
    for (int s = 0; s + 1 < phi.arity; ++s)
        f[static_cast<size_t>(s)] =
            phi.values[static_cast<size_t>(s)] >= phi.values[static_cast<size_t>(s) + 1] ? 1 : 0;
    return f;
}

}  // namespace

void enumerate_admissible(const Surjection& phi, int L,
                          const std::function<void(std::span<const int>)>& visit) {
    if (phi.arity == 1) {
        std::vector<int> j(1);
        for (int v = 1; v <= L; ++v) {
            j[0] = v;
            visit(j);
        }
        return;
    }
    enumerate_tuples(strict_flags(phi), phi.arity, L, visit);
}

std::vector<std::vector<int>> admissible_tuples(const Surjection& phi, int L) {
    std::vector<std::vector<int>> out;
    enumerate_admissible(phi, L, [&](std::span<const int> j) { out.emplace_back(j.begin(), j.end()); });
    return out;
}

std::uint64_t count_admissible(const Surjection& phi, int L) {
    std::uint64_t c = 0;
    enumerate_admissible(phi, L, [&](std::span<const int>) { ++c; });
    return c;
}

// ---------------------------------------------------------------------------
// PatternSpec and verification
// ---------------------------------------------------------------------------

void PatternSpec::validate() const {
    if (phis.empty()) throw std::invalid_argument("PatternSpec: no surjections");
    if (targets.size() != phis.size())
        throw std::invalid_argument("PatternSpec: one target per surjection required");
    int k = phis.front().arity, m = phis.front().codomain;
    if (static_cast<int>(grounds.size()) != m)
        throw std::invalid_argument("PatternSpec: one ground per role required");
    for (const auto& g : grounds)
        if (g.size < 1) throw std::invalid_argument("PatternSpec: ground size must be >= 1");
    for (size_t i = 0; i < phis.size(); ++i) {
        const auto& phi = phis[i];
        if (phi.arity != k || phi.codomain != m)
            throw std::invalid_argument("PatternSpec: mixed surjection shapes");
        const auto& dims = targets[i].dims();
        if (static_cast<int>(dims.size()) != k)
            throw std::invalid_argument("PatternSpec: target arity mismatch");
        for (int s = 0; s < k; ++s)
            if (dims[static_cast<size_t>(s)] !=
                grounds[static_cast<size_t>(phi.values[static_cast<size_t>(s)]) - 1].size)
                throw std::invalid_argument("PatternSpec: target axis does not match its role ground");
    }
}

namespace {

std::vector<detail::ConstraintFamily> spec_families(const PatternSpec& spec) {
    std::vector<detail::ConstraintFamily> fams;
    for (size_t i = 0; i < spec.phis.size(); ++i) {
        detail::ConstraintFamily f;
        const auto& phi = spec.phis[i];
        f.roles.resize(static_cast<size_t>(phi.arity));
        for (int s = 0; s < phi.arity; ++s)
            f.roles[static_cast<size_t>(s)] = phi.values[static_cast<size_t>(s)] - 1;
        f.strict_after = phi.arity > 1 ? strict_flags(phi) : std::vector<std::uint8_t>{};
        f.target = &spec.targets[i];
        f.phi_index = static_cast<int>(i);
        fams.push_back(std::move(f));
    }
    return fams;
}

}  // namespace

namespace detail {

Verdict verify_families(const std::vector<RoleGround>& grounds,
                        const std::vector<ConstraintFamily>& families, const Witness& w) {
    Verdict v;
    int m = static_cast<int>(grounds.size());
    if (static_cast<int>(w.sequences.size()) != m) {
        v.pass = false;
        v.violation = Violation{Violation::Kind::shape, -1, {}, {}, "role count mismatch"};
        return v;
    }
    for (int r = 0; r < m; ++r) {
        const auto& seq = w.sequences[static_cast<size_t>(r)];
        if (static_cast<int>(seq.size()) != w.depth) {
            v.pass = false;
            v.violation = Violation{Violation::Kind::shape, -1, {}, {}, "sequence length mismatch"};
            return v;
        }
        for (int x : seq)
            if (x < 0 || x >= grounds[static_cast<size_t>(r)].size) {
                v.pass = false;
                v.violation = Violation{Violation::Kind::shape, -1, {}, {x}, "value outside ground"};
                return v;
            }
    }
    // (a) global distinctness
    std::set<int> seen;
    for (int r = 0; r < m; ++r)
        for (int n = 0; n < w.depth; ++n) {
            int x = w.sequences[static_cast<size_t>(r)][static_cast<size_t>(n)];
            if (!seen.insert(x).second) {
                std::ostringstream os;
                os << "value " << x << " repeats (role " << r + 1 << ", position " << n + 1 << ")";
                v.pass = false;
                v.violation = Violation{Violation::Kind::distinctness, -1, {n + 1}, {x}, os.str()};
                return v;
            }
        }
    // (b) monotonicity on ordered grounds
    for (int r = 0; r < m; ++r) {
        if (!grounds[static_cast<size_t>(r)].ordered) continue;
        const auto& seq = w.sequences[static_cast<size_t>(r)];
        for (int n = 1; n < w.depth; ++n)
            if (seq[static_cast<size_t>(n) - 1] >= seq[static_cast<size_t>(n)]) {
                std::ostringstream os;
                os << "role " << r + 1 << " not increasing at position " << n + 1;
                v.pass = false;
                v.violation = Violation{Violation::Kind::monotonicity, -1, {n + 1},
                                        {seq[static_cast<size_t>(n) - 1], seq[static_cast<size_t>(n)]},
                                        os.str()};
                return v;
            }
    }
    // (c) every admissible staggered tuple lands in its target
    for (size_t fi = 0; fi < families.size(); ++fi) {
        const auto& f = families[fi];
        int k = static_cast<int>(f.roles.size());
        bool failed = false;
        Violation viol;
        std::vector<int> vals(static_cast<size_t>(k));
        enumerate_tuples(f.strict_after, k, w.depth, [&](std::span<const int> j) {
            if (failed) return;
            ++v.checks;
            for (int s = 0; s < k; ++s)
                vals[static_cast<size_t>(s)] =
                    w.sequences[f.roles[static_cast<size_t>(s)]][static_cast<size_t>(j[static_cast<size_t>(s)]) - 1];
            if (!f.target->member(vals)) {
                failed = true;
                viol = Violation{Violation::Kind::membership, f.phi_index,
                                 std::vector<int>(j.begin(), j.end()), vals, "tuple outside target"};
            }
        });
        if (failed) {
            v.pass = false;
            v.violation = viol;
            return v;
        }
    }
    return v;
}

// ---------------------------------------------------------------------------
// Backtracking searcher
// ---------------------------------------------------------------------------

namespace {

struct Check {
    int family = 0;
    std::vector<int> tuple;  // 1-based indices; full or proper prefix
};

struct Dispatch {
    std::vector<std::vector<Check>> full;    // per slot
    std::vector<std::vector<Check>> prefix;  // per slot
};

// slot(role, n) = (n-1)*m + role; tuple positions are visited in slot order,
// since ties in the index are only admissible when the roles ascend.
int slot_of(int role, int n, int m) { return (n - 1) * m + role; }

Dispatch build_dispatch(const std::vector<ConstraintFamily>& families, int m, int L) {
    Dispatch d;
    d.full.resize(static_cast<size_t>(m) * static_cast<size_t>(L));
    d.prefix.resize(d.full.size());
    for (size_t fi = 0; fi < families.size(); ++fi) {
        const auto& f = families[fi];
        int k = static_cast<int>(f.roles.size());
        enumerate_tuples(f.strict_after, k, L, [&](std::span<const int> j) {
            int trig = slot_of(f.roles[static_cast<size_t>(k) - 1], j[static_cast<size_t>(k) - 1], m);
            d.full[static_cast<size_t>(trig)].push_back(
                Check{static_cast<int>(fi), std::vector<int>(j.begin(), j.end())});
        });
        // proper prefixes that can still extend within L
        std::vector<int> strict_tail(static_cast<size_t>(k), 0);
        for (int s = k - 2; s >= 0; --s)
            strict_tail[static_cast<size_t>(s)] =
                strict_tail[static_cast<size_t>(s) + 1] + (f.strict_after[static_cast<size_t>(s)] ? 1 : 0);
        for (int s = 1; s < k; ++s) {
            std::set<std::vector<int>> uniq;
            std::vector<std::uint8_t> head(f.strict_after.begin(),
                                           f.strict_after.begin() + (s - 1));
            enumerate_tuples(head, s, L, [&](std::span<const int> j) {
                if (j[static_cast<size_t>(s) - 1] + strict_tail[static_cast<size_t>(s) - 1] > L) return;
                uniq.insert(std::vector<int>(j.begin(), j.end()));
            });
            for (const auto& j : uniq) {
                int trig = slot_of(f.roles[static_cast<size_t>(s) - 1], j[static_cast<size_t>(s) - 1], m);
                d.prefix[static_cast<size_t>(trig)].push_back(Check{static_cast<int>(fi), j});
            }
        }
    }
    return d;
}

class Searcher {
public:
    Searcher(const std::vector<RoleGround>& grounds, const std::vector<ConstraintFamily>& families,
             int L, const SearchOptions& opt, const Dispatch& dispatch)
        : grounds_(grounds), families_(families), L_(L), m_(static_cast<int>(grounds.size())),
          opt_(opt), dispatch_(dispatch) {
        int max_ground = 0;
        for (const auto& g : grounds_) max_ground = std::max(max_ground, g.size);
        used_.assign(static_cast<size_t>(max_ground), 0);
        assign_.assign(static_cast<size_t>(m_), std::vector<int>(static_cast<size_t>(L_), -1));
        fiber_memo_.resize(families_.size());
    }

    std::uint64_t nodes = 0;
    bool budget_hit = false;

    // abort once another worker holds a success at a smaller root
    const std::atomic<long long>* stop_below = nullptr;
    long long my_root = -1;

    bool run(int first_slot, std::mt19937_64* rng) {
        rng_ = rng;
        return dfs(first_slot);
    }

    bool place_root(int value) {
        assign_[0][0] = value;
        if (value < static_cast<int>(used_.size())) used_[static_cast<size_t>(value)] = 1;
        ++nodes;
        return slot_ok(0);
    }

    Witness witness() const {
        Witness w;
        w.depth = L_;
        w.sequences = assign_;
        return w;
    }

private:
    bool dfs(int t) {
        if (t == m_ * L_) return true;
        if (stop_below && (nodes & 1023) == 0 && stop_below->load(std::memory_order_relaxed) < my_root)
            return false;
        int role = t % m_;
        int n = t / m_ + 1;
        const auto& g = grounds_[static_cast<size_t>(role)];
        int lo = 0;
        if (g.ordered && n > 1) lo = assign_[static_cast<size_t>(role)][static_cast<size_t>(n) - 2] + 1;

        std::vector<int> cands;
        for (int v = lo; v < g.size; ++v) {
            if (v < static_cast<int>(used_.size()) && used_[static_cast<size_t>(v)]) continue;
            if (opt_.admit && !opt_.admit(role, n, v, assign_)) continue;
            cands.push_back(v);
        }
        if (opt_.strategy == SearchStrategy::greedy && rng_) order_greedy(t, role, n, cands);

        for (int v : cands) {
            if (opt_.strategy == SearchStrategy::greedy && nodes >= opt_.node_budget) {
                budget_hit = true;
                return false;
            }
            assign_[static_cast<size_t>(role)][static_cast<size_t>(n) - 1] = v;
            used_[static_cast<size_t>(v)] = 1;
            ++nodes;
            if (slot_ok(t) && dfs(t + 1)) return true;
            assign_[static_cast<size_t>(role)][static_cast<size_t>(n) - 1] = -1;
            used_[static_cast<size_t>(v)] = 0;
        }
        return false;
    }

    bool slot_ok(int t) {
        for (const auto& c : dispatch_.full[static_cast<size_t>(t)]) {
            const auto& f = families_[static_cast<size_t>(c.family)];
            gather(f, c.tuple, vals_);
            if (!f.target->member(vals_)) return false;
        }
        for (const auto& c : dispatch_.prefix[static_cast<size_t>(t)]) {
            const auto& f = families_[static_cast<size_t>(c.family)];
            gather(f, c.tuple, vals_);
            if (fiber_count(static_cast<size_t>(c.family), vals_, false) == 0) return false;
        }
        return true;
    }

    void gather(const ConstraintFamily& f, const std::vector<int>& j, std::vector<int>& out) const {
        out.resize(j.size());
        for (size_t s = 0; s < j.size(); ++s)
            out[s] = assign_[f.roles[s]][static_cast<size_t>(j[s]) - 1];
    }

    // Number of continuations of a value prefix inside the target box;
    // -1 stands for "nonempty, not fully counted". Memoized per family,
    // except at the frontier (one free axis): those prefixes are fresh on
    // every visit, so a single scan beats the map traffic.
    long long fiber_count(size_t fam, const std::vector<int>& prefix, bool exact) {
        const auto& f = families_[fam];
        const auto& dims = f.target->dims();
        size_t s = prefix.size();
        bool frontier = (s + 1 == dims.size());
        auto& memo = fiber_memo_[fam];
        if (!frontier) {
            auto it = memo.find(prefix);
            if (it != memo.end() && (!exact || it->second >= 0)) return it->second;
        }
        std::vector<int> t(prefix);
        t.resize(dims.size());
        long long found = 0;
        std::uint64_t remaining_cells = 1;
        for (size_t a = s; a < dims.size(); ++a) remaining_cells *= static_cast<std::uint64_t>(dims[a]);
        bool cap_exact = exact && remaining_cells <= (1u << 16);
        // early-exit existence scan unless an exact count was requested
        if (!exact || !cap_exact) {
            bool empty = true;
            auto exist = [&](auto&& self, size_t a) -> bool {
                if (a == dims.size()) return f.target->member(t);
                for (int v = 0; v < dims[a]; ++v) {
                    t[a] = v;
                    if (self(self, a + 1)) return true;
                }
                return false;
            };
            empty = !exist(exist, s);
            long long res = empty ? 0 : -1;
            if (!frontier) memo[prefix] = res;
            return res;
        }
        auto count_all = [&](auto&& self, size_t a) -> void {
            if (a == dims.size()) {
                if (f.target->member(t)) ++found;
                return;
            }
            for (int v = 0; v < dims[a]; ++v) {
                t[a] = v;
                self(self, a + 1);
            }
        };
        count_all(count_all, s);
        if (!frontier) memo[prefix] = found;
        return found;
    }

    // greedy order: maximize the minimum fiber density over the prefixes this
    // slot forces; ties jittered by the restart rng, then least value first
    void order_greedy(int t, int role, int n, std::vector<int>& cands) {
        const auto& checks = dispatch_.prefix[static_cast<size_t>(t)];
        std::vector<std::pair<double, int>> scored;
        scored.reserve(cands.size());
        for (int v : cands) {
            assign_[static_cast<size_t>(role)][static_cast<size_t>(n) - 1] = v;
            double score = 1.0;
            bool dead = false;
            for (const auto& c : dispatch_.full[static_cast<size_t>(t)]) {
                const auto& f = families_[static_cast<size_t>(c.family)];
                gather(f, c.tuple, vals_);
                if (!f.target->member(vals_)) {
                    dead = true;
                    break;
                }
            }
            for (const auto& c : checks) {
                if (dead) break;
                const auto& f = families_[static_cast<size_t>(c.family)];
                gather(f, c.tuple, vals_);
                long long cnt = fiber_count(static_cast<size_t>(c.family), vals_, true);
                if (cnt == 0) {
                    dead = true;
                    break;
                }
                std::uint64_t box = 1;
                const auto& dims = f.target->dims();
                for (size_t a = c.tuple.size(); a < dims.size(); ++a)
                    box *= static_cast<std::uint64_t>(dims[a]);
                double density = cnt < 0 ? 1.0 : static_cast<double>(cnt) / static_cast<double>(box);
                score = std::min(score, density);
            }
            assign_[static_cast<size_t>(role)][static_cast<size_t>(n) - 1] = -1;
            if (dead) continue;
            double jitter = std::uniform_real_distribution<double>(0.0, 1e-6)(*rng_);
            scored.emplace_back(-(score + jitter), v);
        }
        std::sort(scored.begin(), scored.end());
        cands.clear();
        for (auto& [s, v] : scored) cands.push_back(v);
    }

    const std::vector<RoleGround>& grounds_;
    const std::vector<ConstraintFamily>& families_;
    int L_;
    int m_;
    const SearchOptions& opt_;
    const Dispatch& dispatch_;
    std::vector<std::vector<int>> assign_;
    std::vector<char> used_;
    std::vector<int> vals_;
    std::vector<std::map<std::vector<int>, long long>> fiber_memo_;
    std::mt19937_64* rng_ = nullptr;
};

SearchResult search_serial(const std::vector<RoleGround>& grounds,
                           const std::vector<ConstraintFamily>& families, int L,
                           const SearchOptions& opt, const Dispatch& dispatch) {
    SearchResult res;
    if (opt.strategy == SearchStrategy::exhaustive) {
        Searcher s(grounds, families, L, opt, dispatch);
        if (s.run(0, nullptr)) res.witness = s.witness();
        res.nodes = s.nodes;
        res.exhausted = !res.witness.has_value();
        return res;
    }
    for (int r = 0; r < std::max(opt.restarts, 1); ++r) {
        std::mt19937_64 rng(opt.seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(r + 1)));
        Searcher s(grounds, families, L, opt, dispatch);
        bool found = s.run(0, &rng);
        res.nodes += s.nodes;
        if (found) {
            res.witness = s.witness();
            return res;
        }
    }
    return res;
}

SearchResult search_parallel(const std::vector<RoleGround>& grounds,
                             const std::vector<ConstraintFamily>& families, int L,
                             const SearchOptions& opt, const Dispatch& dispatch) {
#ifdef _OPENMP
    // Root-level split: every first-slot candidate spawns an independent
    // subtree; the lowest successful root wins, matching the serial answer.
    const auto& g0 = grounds[0];
    std::vector<std::vector<int>> blank(grounds.size(), std::vector<int>(static_cast<size_t>(L), -1));
    std::vector<int> roots;
    for (int v = 0; v < g0.size; ++v) {
        if (opt.admit && !opt.admit(0, 1, v, blank)) continue;
        roots.push_back(v);
    }
    std::atomic<long long> best_root{static_cast<long long>(g0.size) + 1};
    std::vector<std::optional<Witness>> results(roots.size());
    std::atomic<std::uint64_t> nodes{0};
#pragma omp parallel for num_threads(opt.threads) schedule(dynamic, 1)
    for (size_t ri = 0; ri < roots.size(); ++ri) {
        long long root = roots[ri];
        if (best_root.load(std::memory_order_relaxed) < root) continue;
        Searcher s(grounds, families, L, opt, dispatch);
        s.stop_below = &best_root;
        s.my_root = root;
        if (s.place_root(roots[ri]) && s.run(1, nullptr)) {
            results[ri] = s.witness();
            long long cur = best_root.load();
            while (root < cur && !best_root.compare_exchange_weak(cur, root)) {
            }
        }
        nodes += s.nodes;
    }
    SearchResult res;
    res.nodes = nodes.load();
    for (size_t ri = 0; ri < roots.size(); ++ri)
        if (results[ri]) {
            res.witness = results[ri];
            break;
        }
    res.exhausted = !res.witness.has_value();
    return res;
#else
    return search_serial(grounds, families, L, opt, dispatch);
#endif
}

}  // namespace

SearchResult search_families(const std::vector<RoleGround>& grounds,
                             const std::vector<ConstraintFamily>& families, int depth,
                             const SearchOptions& opt) {
    if (depth < 1) throw std::invalid_argument("search: depth must be >= 1");
    if (grounds.empty()) throw std::invalid_argument("search: no roles");
    for (const auto& f : families) {
        if (f.roles.empty() || !f.target)
            throw std::invalid_argument("search: malformed constraint family");
        for (size_t s = 0; s + 1 < f.roles.size(); ++s)
            if (!f.strict_after[s] && f.roles[s] >= f.roles[s + 1])
                throw std::invalid_argument("search: tie allowed only across ascending roles");
    }
    Dispatch dispatch = build_dispatch(families, static_cast<int>(grounds.size()), depth);
    SearchResult res =
        (opt.threads > 1 && opt.strategy == SearchStrategy::exhaustive)
            ? search_parallel(grounds, families, depth, opt, dispatch)
            : search_serial(grounds, families, depth, opt, dispatch);
    if (res.witness) {
        Verdict check = verify_families(grounds, families, *res.witness);
        if (!check.pass) throw std::logic_error("search: produced witness failed re-verification");
    }
    return res;
}

}  // namespace detail

SearchResult search_witness(const PatternSpec& spec, int depth, const SearchOptions& opt) {
    spec.validate();
    auto families = spec_families(spec);
    return detail::search_families(spec.grounds, families, depth, opt);
}

Verdict verify_witness(const PatternSpec& spec, const Witness& w) {
    spec.validate();
    auto families = spec_families(spec);
    return detail::verify_families(spec.grounds, families, w);
}

}  // namespace ultracomb
