#include "ultracomb/ultrafilter.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "ultracomb/kernels.hpp"

namespace ultracomb {

std::string SubsetMask::hex() const {
    std::ostringstream os;
    os << "0x" << std::hex << bits;
    return os.str();
}

GroundMap GroundMap::identity(int n) {
    std::vector<int> v(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = i;
    return {n, n, std::move(v)};
}

GroundMap GroundMap::constant(int from, int to, int c) {
    return {from, to, std::vector<int>(static_cast<size_t>(from), c)};
}

GroundMap GroundMap::compose(const GroundMap& f, const GroundMap& g) {
    if (g.to_size != f.from_size) throw std::invalid_argument("GroundMap: composition mismatch");
    std::vector<int> v(static_cast<size_t>(g.from_size));
    for (int x = 0; x < g.from_size; ++x) v[static_cast<size_t>(x)] = f(g(x));
    return {g.from_size, f.to_size, std::move(v)};
}

SubsetMask GroundMap::preimage(const SubsetMask& y) const {
    if (y.ground_size != to_size) throw std::invalid_argument("GroundMap: preimage ground mismatch");
    Mask bits = 0;
    for (int x = 0; x < from_size; ++x)
        if (y.test((*this)(x))) bits |= Mask{1} << x;
    return {from_size, bits};
}

int ProductSpace::encode(std::span<const int> idx) const {
    if (static_cast<int>(idx.size()) != arity())
        throw std::invalid_argument("ProductSpace: arity mismatch");
    int e = 0;
    for (int a = 0; a < arity(); ++a) {
        int i = idx[static_cast<size_t>(a)];
        if (i < 0 || i >= factors[static_cast<size_t>(a)])
            throw std::out_of_range("ProductSpace: index out of range");
        e = e * factors[static_cast<size_t>(a)] + i;
    }
    return e;
}

std::vector<int> ProductSpace::decode(int e) const {
    std::vector<int> idx(static_cast<size_t>(arity()));
    for (int a = arity() - 1; a >= 0; --a) {
        idx[static_cast<size_t>(a)] = e % factors[static_cast<size_t>(a)];
        e /= factors[static_cast<size_t>(a)];
    }
    return idx;
}

ProductSpace ProductSpace::select(std::span<const int> axes) const {
    std::vector<int> f;
    for (int a : axes) {
        if (a < 1 || a > arity()) throw std::invalid_argument("ProductSpace: invalid axis");
        f.push_back(factors[static_cast<size_t>(a) - 1]);
    }
    return ProductSpace(std::move(f));
}

GroundMap ProductSpace::projection(std::span<const int> axes) const {
    ProductSpace target = select(axes);
    int n = total();
    std::vector<int> v(static_cast<size_t>(n));
    for (int e = 0; e < n; ++e) {
        auto idx = decode(e);
        std::vector<int> sel;
        for (int a : axes) sel.push_back(idx[static_cast<size_t>(a) - 1]);
        v[static_cast<size_t>(e)] = target.encode(sel);
    }
    return {n, target.total(), std::move(v)};
}

FiniteUltrafilter principal(int ground_size, int i) {
    if (ground_size < 1) throw std::invalid_argument("principal: ground size must be >= 1");
    if (i < 0 || i >= ground_size) throw std::out_of_range("principal: point out of range");
    return {ground_size, i};
}

FiniteUltrafilter principal(const GroundSet& ground, int i) { return principal(ground.size, i); }

bool member(const FiniteUltrafilter& u, const SubsetMask& s) {
    if (s.ground_size != u.ground_size)
        throw std::invalid_argument("member: ground mismatch");
    return s.test(u.point);
}

FiniteUltrafilter image(const GroundMap& f, const FiniteUltrafilter& u) {
    if (f.from_size != u.ground_size) throw std::invalid_argument("image: domain mismatch");
    return principal(f.to_size, f(u.point));
}

bool image_member_definitional(const GroundMap& f, const FiniteUltrafilter& u,
                               const SubsetMask& y) {
    return member(u, f.preimage(y));
}

FiniteUltrafilter tensor_product(const FiniteUltrafilter& u, const FiniteUltrafilter& v) {
    long long total = static_cast<long long>(u.ground_size) * v.ground_size;
    if (total > (1 << 26)) throw CapExceeded("tensor_product: product ground too large");
    return principal(static_cast<int>(total), u.point * v.ground_size + v.point);
}

SubsetMask fiber(const SubsetMask& x, int i_size, int j_size, int i) {
    if (x.ground_size != i_size * j_size) throw std::invalid_argument("fiber: ground mismatch");
    if (i < 0 || i >= i_size) throw std::out_of_range("fiber: index out of range");
    Mask jmask = (j_size == 64) ? ~Mask{0} : (Mask{1} << j_size) - 1;
    return {j_size, (x.bits >> (i * j_size)) & jmask};
}

bool tensor_member_definitional(const FiniteUltrafilter& u, const FiniteUltrafilter& v,
                                const SubsetMask& x) {
    Mask good = 0;
    for (int i = 0; i < u.ground_size; ++i)
        if (member(v, fiber(x, u.ground_size, v.ground_size, i))) good |= Mask{1} << i;
    return member(u, SubsetMask{u.ground_size, good});
}

bool tensor3_member_definitional(const FiniteUltrafilter& u, const FiniteUltrafilter& v,
                                 const FiniteUltrafilter& w, int i_size, int j_size, int k_size,
                                 const SubsetMask& x) {
    if (x.ground_size != i_size * j_size * k_size)
        throw std::invalid_argument("tensor3: ground mismatch");
    Mask good = 0;
    for (int i = 0; i < i_size; ++i) {
        SubsetMask xi = fiber(x, i_size, j_size * k_size, i);
        if (tensor_member_definitional(v, w, xi)) good |= Mask{1} << i;
    }
    return member(u, SubsetMask{i_size, good});
}

FiniteUltrafilter project(const FiniteUltrafilter& w, const ProductSpace& space,
                          std::span<const int> axes) {
    if (space.total() != w.ground_size) throw std::invalid_argument("project: space mismatch");
    return image(space.projection(axes), w);
}

FiniteUltrafilter pseudo_sum(const FiniteUltrafilter& u, const FiniteUltrafilter& v) {
    if (u.ground_size != v.ground_size) throw std::invalid_argument("pseudo_sum: ground mismatch");
    int s = u.point + v.point;
    if (s >= u.ground_size)
        throw OverflowBeyondTruncation("pseudo_sum: sum escapes the truncated segment");
    return principal(u.ground_size, s);
}

bool pseudo_sum_member_definitional(const FiniteUltrafilter& u, const FiniteUltrafilter& v,
                                    const SubsetMask& a) {
    if (a.ground_size != u.ground_size || u.ground_size != v.ground_size)
        throw std::invalid_argument("pseudo_sum: ground mismatch");
    int n_sz = u.ground_size;
    Mask full = (n_sz == 64) ? ~Mask{0} : (Mask{1} << n_sz) - 1;
    Mask good = 0;
    for (int n = 0; n < n_sz; ++n) {
        SubsetMask shifted{n_sz, (a.bits >> n) & full};  // A - n
        if (member(v, shifted)) good |= Mask{1} << n;
    }
    return member(u, SubsetMask{n_sz, good});
}

bool star_member_definitional(const FiniteUltrafilter& v, const FiniteUltrafilter& w,
                              int i_size, int j_size, const SubsetMask& x) {
    int total = i_size * j_size;
    if (v.ground_size != total || w.ground_size != total || x.ground_size != total)
        throw std::invalid_argument("star: space mismatch");
    // inner(a) = {(c,d) | (a,d) in X}: every row equals the a-fiber of X
    Mask outer = 0;
    for (int a = 0; a < i_size; ++a) {
        SubsetMask xa = fiber(x, i_size, j_size, a);
        Mask inner = 0;
        for (int c = 0; c < i_size; ++c) inner |= xa.bits << (c * j_size);
        if (member(w, SubsetMask{total, inner}))
            for (int b = 0; b < j_size; ++b) outer |= Mask{1} << (a * j_size + b);
    }
    return member(v, SubsetMask{total, outer});
}

FiniteUltrafilter star_extension(const FiniteUltrafilter& v, const FiniteUltrafilter& w,
                                 int i_size, int j_size) {
    int total = i_size * j_size;
    if (v.ground_size != total || w.ground_size != total)
        throw std::invalid_argument("star: space mismatch");
    // Evaluate the defining condition over singletons to locate the point.
    std::optional<int> pt;
    for (int e = 0; e < total; ++e) {
        SubsetMask single{total, Mask{1} << e};
        if (star_member_definitional(v, w, i_size, j_size, single)) {
            pt = e;
            break;
        }
    }
    if (!pt) throw std::logic_error("star: no principal point (unreachable)");
    return principal(total, *pt);
}

// ---------------------------------------------------------------------------
// check_model
// ---------------------------------------------------------------------------

namespace {

std::string describe_counterexample(const char* what, int point, Mask subset) {
    std::ostringstream os;
    os << what << " at point " << point << ", subset 0x" << std::hex << subset;
    return os.str();
}

// Scans all subsets of a product ground for every principal point; `holds`
// takes (point, subset mask).
template <class F>
ClauseResult scan_clause(std::string name, int total_bits, int points, F&& holds, int threads) {
    ClauseResult res;
    res.name = std::move(name);
    Mask count = Mask{1} << total_bits;
    for (int p = 0; p < points; ++p) {
        auto scan = kernels::scan_masks(
            count, [&](Mask x) { return holds(p, x); }, threads);
        res.checked += scan.checked;
        if (scan.first_violation) {
            res.pass = false;
            res.counterexample = describe_counterexample("violated", p, *scan.first_violation);
            return res;
        }
    }
    return res;
}

std::vector<GroundMap> all_maps(int from, int to) {
    std::vector<GroundMap> out;
    std::vector<int> v(static_cast<size_t>(from), 0);
    while (true) {
        out.emplace_back(from, to, v);
        int pos = from - 1;
        while (pos >= 0 && v[static_cast<size_t>(pos)] == to - 1) {
            v[static_cast<size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++v[static_cast<size_t>(pos)];
    }
    return out;
}

GroundMap random_map(int from, int to, std::mt19937_64& rng) {
    std::vector<int> v(static_cast<size_t>(from));
    std::uniform_int_distribution<int> dist(0, to - 1);
    for (auto& x : v) x = dist(rng);
    return {from, to, std::move(v)};
}

GroundMap pair_map(const GroundMap& f1, const GroundMap& f2) {
    // (f1, f2) on the row-major product of the domains
    int from = f1.from_size * f2.from_size;
    int to = f1.to_size * f2.to_size;
    std::vector<int> v(static_cast<size_t>(from));
    for (int a = 0; a < f1.from_size; ++a)
        for (int b = 0; b < f2.from_size; ++b)
            v[static_cast<size_t>(a * f2.from_size + b)] = f1(a) * f2.to_size + f2(b);
    return {from, to, std::move(v)};
}

}  // namespace

ModelReport check_model(const ModelCheckConfig& cfg) {
    if (cfg.i_size < 1 || cfg.j_size < 1 || (cfg.k_size && *cfg.k_size < 1))
        throw std::invalid_argument("check_model: sizes must be >= 1");
    if (cfg.i_size > cfg.ground_cap || cfg.j_size > cfg.ground_cap ||
        (cfg.k_size && *cfg.k_size > cfg.ground_cap))
        throw CapExceeded("check_model: ground size cap exceeded");
    int isz = cfg.i_size, jsz = cfg.j_size;
    int pair_bits = isz * jsz;
    if (pair_bits > cfg.product_bits_cap) throw CapExceeded("check_model: subset scan cap exceeded");

    ModelReport report;
    report.config = cfg;
    int total = pair_bits;

    auto proj1 = [&](int p) { return principal(isz, p / jsz); };
    auto proj2 = [&](int p) { return principal(jsz, p % jsz); };

    // Projections of a tensor product recover the factors; checked over all
    // subsets via the definitional membership.
    report.clauses.push_back(scan_clause(
        "tensor factorization: W equals the tensor of its projections", total, total,
        [&](int p, Mask x) {
            FiniteUltrafilter w = principal(total, p);
            SubsetMask sub{total, x};
            bool lhs = member(w, sub);
            bool rhs = tensor_member_definitional(proj1(p), proj2(p), sub);
            return lhs == rhs;
        },
        cfg.threads));

    report.clauses.push_back(scan_clause(
        "fiber largeness: all fibers large forces membership", total, total,
        [&](int p, Mask x) {
            FiniteUltrafilter w = principal(total, p);
            SubsetMask sub{total, x};
            bool all_fibers = true;
            for (int i = 0; i < isz && all_fibers; ++i)
                all_fibers = member(proj2(p), fiber(sub, isz, jsz, i));
            return !all_fibers || member(w, sub);
        },
        cfg.threads));

    report.clauses.push_back(scan_clause(
        "fiber witness: membership yields a large fiber", total, total,
        [&](int p, Mask x) {
            FiniteUltrafilter w = principal(total, p);
            SubsetMask sub{total, x};
            if (!member(w, sub)) return true;
            for (int i = 0; i < isz; ++i)
                if (member(proj2(p), fiber(sub, isz, jsz, i))) return true;
            return false;
        },
        cfg.threads));

    // Principal projection forces the tensor-product identity; on these
    // grounds every projection is principal, so the clause covers every W.
    report.clauses.push_back(scan_clause(
        "principal projection: every W here is a tensor product", total, total,
        [&](int p, Mask x) {
            FiniteUltrafilter w = principal(total, p);
            SubsetMask sub{total, x};
            return member(w, sub) == tensor_member_definitional(proj1(p), proj2(p), sub);
        },
        cfg.threads));

    // Image commutation with tensor products, over all maps into small
    // codomains (sampled beyond the exhaustive cap).
    {
        ClauseResult res;
        res.name = "image commutation: componentwise images of a tensor product";
        std::mt19937_64 rng(cfg.seed);
        bool done = false;
        for (int t1 = 1; t1 <= cfg.map_target_cap && !done; ++t1) {
            for (int t2 = 1; t2 <= cfg.map_target_cap && !done; ++t2) {
                std::vector<GroundMap> maps1, maps2;
                bool exhaustive1 = std::pow(static_cast<double>(t1), isz) <= 256.0;
                bool exhaustive2 = std::pow(static_cast<double>(t2), jsz) <= 256.0;
                maps1 = exhaustive1 ? all_maps(isz, t1) : std::vector<GroundMap>{};
                maps2 = exhaustive2 ? all_maps(jsz, t2) : std::vector<GroundMap>{};
                for (int s = 0; !exhaustive1 && s < cfg.sampled_maps; ++s)
                    maps1.push_back(random_map(isz, t1, rng));
                for (int s = 0; !exhaustive2 && s < cfg.sampled_maps; ++s)
                    maps2.push_back(random_map(jsz, t2, rng));
                int tgt_total = t1 * t2;
                Mask sub_count = Mask{1} << tgt_total;
                for (const auto& f1 : maps1) {
                    for (const auto& f2 : maps2) {
                        GroundMap joint = pair_map(f1, f2);
                        for (int pu = 0; pu < isz && !done; ++pu) {
                            for (int pv = 0; pv < jsz && !done; ++pv) {
                                FiniteUltrafilter u = principal(isz, pu);
                                FiniteUltrafilter v = principal(jsz, pv);
                                FiniteUltrafilter uv = tensor_product(u, v);
                                auto scan = kernels::scan_masks(
                                    sub_count,
                                    [&](Mask y) {
                                        SubsetMask sub{tgt_total, y};
                                        bool lhs = tensor_member_definitional(
                                            image(f1, u), image(f2, v), sub);
                                        bool rhs = image_member_definitional(joint, uv, sub);
                                        return lhs == rhs;
                                    },
                                    cfg.threads);
                                res.checked += scan.checked;
                                if (scan.first_violation) {
                                    res.pass = false;
                                    res.counterexample = describe_counterexample(
                                        "image commutation failed", pu * jsz + pv,
                                        *scan.first_violation);
                                    done = true;
                                }
                            }
                        }
                    }
                }
            }
        }
        report.clauses.push_back(std::move(res));
    }

    if (cfg.k_size) {
        int ksz = *cfg.k_size;
        int triple_bits = isz * jsz * ksz;
        if (triple_bits > cfg.product_bits_cap)
            throw CapExceeded("check_model: triple subset scan cap exceeded");
        int triple_total = triple_bits;
        ProductSpace space({isz, jsz, ksz});
        report.clauses.push_back(scan_clause(
            "triple splitting: tensor pair projections force the triple product", triple_total,
            triple_total,
            [&](int p, Mask x) {
                FiniteUltrafilter z = principal(triple_total, p);
                SubsetMask sub{triple_total, x};
                auto idx = space.decode(p);
                FiniteUltrafilter pi1 = principal(isz, idx[0]);
                FiniteUltrafilter pi2 = principal(jsz, idx[1]);
                FiniteUltrafilter pi3 = principal(ksz, idx[2]);
                bool lhs = member(z, sub);
                bool rhs = tensor3_member_definitional(pi1, pi2, pi3, isz, jsz, ksz, sub);
                return lhs == rhs;
            },
            cfg.threads));
    }

    // Star operation: V (*) W agrees with the tensor of the outer projections,
    // for every pair, over all subsets.
    {
        ClauseResult res;
        res.name = "star identity: V (*) W equals pi1(V) (x) pi2(W)";
        Mask count = Mask{1} << total;
        for (int pv = 0; pv < total && res.pass; ++pv) {
            for (int pw = 0; pw < total && res.pass; ++pw) {
                FiniteUltrafilter v = principal(total, pv);
                FiniteUltrafilter w = principal(total, pw);
                FiniteUltrafilter lhs_u = principal(isz, pv / jsz);
                FiniteUltrafilter rhs_u = principal(jsz, pw % jsz);
                auto scan = kernels::scan_masks(
                    count,
                    [&](Mask x) {
                        SubsetMask sub{total, x};
                        bool lhs = star_member_definitional(v, w, isz, jsz, sub);
                        bool rhs = tensor_member_definitional(lhs_u, rhs_u, sub);
                        return lhs == rhs;
                    },
                    cfg.threads);
                res.checked += scan.checked;
                if (scan.first_violation) {
                    res.pass = false;
                    res.counterexample = describe_counterexample("star identity failed",
                                                                 pv * total + pw,
                                                                 *scan.first_violation);
                }
            }
        }
        report.clauses.push_back(std::move(res));
    }

    report.clauses.push_back(scan_clause(
        "star idempotency: every W here satisfies W (*) W = W", total, total,
        [&](int p, Mask x) {
            FiniteUltrafilter w = principal(total, p);
            SubsetMask sub{total, x};
            return star_member_definitional(w, w, isz, jsz, sub) == member(w, sub);
        },
        cfg.threads));

    return report;
}

std::string ModelReport::text() const {
    std::ostringstream os;
    os << "model check on grounds (" << config.i_size << ", " << config.j_size;
    if (config.k_size) os << ", " << *config.k_size;
    os << ")\n";
    for (const auto& c : clauses) {
        os << (c.pass ? "  [pass] " : "  [FAIL] ") << c.name << " (" << c.checked << " checks)";
        if (c.counterexample) os << "  <- " << *c.counterexample;
        os << "\n";
    }
    os << (pass() ? "all clauses pass" : "counterexample found") << ", " << total_checked()
       << " checks total\n";
    return os.str();
}

}  // namespace ultracomb
