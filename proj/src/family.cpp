/*
   Copyright 2026 The matrixscheme authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "mscheme/family.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mscheme/errors.hpp"

namespace mscheme {

namespace {

MultiPoly poly_matrix_entry_product(const std::vector<std::vector<MultiPoly>>& a,
                                    const std::vector<std::vector<MultiPoly>>& b, int i, int k,
                                    int r) {
    MultiPoly acc(a[0][0].nvars(), a[0][0].mode());
    for (int j = 0; j < r; ++j) acc = acc + a[static_cast<size_t>(i)][static_cast<size_t>(j)] *
                                          b[static_cast<size_t>(j)][static_cast<size_t>(k)];
    return acc;
}

std::vector<mpq_class> axis_samples(const std::pair<mpq_class, mpq_class>& window, int count) {
    if (count < 1) throw std::invalid_argument("grid axis needs at least one sample");
    const auto& [lo, hi] = window;
    std::vector<mpq_class> out;
    if (count == 1) {
        out.push_back((lo + hi) / 2);
        return out;
    }
    mpq_class step = (hi - lo) / (count - 1);
    for (int j = 0; j < count; ++j) out.push_back(lo + step * j);
    return out;
}

double point_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

std::vector<double> support_coords(const SupportReportEntry& e) {
    std::vector<double> q;
    q.reserve(e.q.size());
    for (const auto& c : e.q) q.push_back(c.to_complex().real());
    return q;
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<size_t>(n)) {
        for (int i = 0; i < n; ++i) parent[static_cast<size_t>(i)] = i;
    }
    int find(int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); }
};

}  // namespace

MatrixFamily make_family(int m, int r,
                         std::vector<std::vector<std::vector<MultiPoly>>> matrices,
                         std::vector<std::pair<mpq_class, mpq_class>> window) {
    if (m < 1) throw std::invalid_argument("family base dimension must be positive");
    if (r < 1) throw std::invalid_argument("family rank must be positive");
    // An empty matrix list is allowed for generator families (surrogates).
    if (static_cast<int>(window.size()) != m)
        throw DimensionMismatch("window axis count differs from the base dimension");
    for (const auto& [lo, hi] : window)
        if (!(lo <= hi)) throw std::invalid_argument("window interval has lo > hi");
    for (const auto& mat : matrices) {
        if (static_cast<int>(mat.size()) != r)
            throw DimensionMismatch("family matrix row count differs from the rank");
        for (const auto& row : mat) {
            if (static_cast<int>(row.size()) != r)
                throw DimensionMismatch("family matrix column count differs from the rank");
            for (const auto& e : row) {
                if (e.nvars() != m)
                    throw VariableCountMismatch("entry polynomial variable count differs from base");
                if (!e.is_zero() && e.mode() != Mode::exact)
                    throw ModeMismatch("family entries must be exact polynomials");
            }
        }
    }
    // Symbolic commutation: A_i A_j = A_j A_i as polynomial identities.
    const int n = static_cast<int>(matrices.size());
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int i = 0; i < r; ++i)
                for (int k = 0; k < r; ++k) {
                    MultiPoly ab = poly_matrix_entry_product(matrices[static_cast<size_t>(a)],
                                                             matrices[static_cast<size_t>(b)], i, k, r);
                    MultiPoly ba = poly_matrix_entry_product(matrices[static_cast<size_t>(b)],
                                                             matrices[static_cast<size_t>(a)], i, k, r);
                    if (ab != ba) {
                        std::ostringstream os;
                        os << "family matrices " << a << " and " << b
                           << " do not commute symbolically; entry (" << i << "," << k << ")";
                        throw NotCommuting(os.str());
                    }
                }
    MatrixFamily fam;
    fam.m = m;
    fam.r = r;
    fam.n = n;
    fam.window = std::move(window);
    fam.matrices = std::move(matrices);
    return fam;
}

MatrixTuple sample_fiber(const MatrixFamily& fam, const std::vector<mpq_class>& x) {
    if (static_cast<int>(x.size()) != fam.m)
        throw DimensionMismatch("sample point length differs from the base dimension");
    for (int i = 0; i < fam.m; ++i)
        if (x[static_cast<size_t>(i)] < fam.window[static_cast<size_t>(i)].first ||
            x[static_cast<size_t>(i)] > fam.window[static_cast<size_t>(i)].second)
            throw OutOfWindow("sample coordinate " + std::to_string(i) + " leaves the window");
    Vec point;
    point.reserve(x.size());
    for (const auto& xi : x) point.push_back(Scalar::rational(xi));
    std::vector<DenseMatrix> ms;
    for (const auto& mat : fam.matrices) {
        DenseMatrix a(fam.r, fam.r, Mode::exact);
        for (int i = 0; i < fam.r; ++i)
            for (int j = 0; j < fam.r; ++j)
                a.set(i, j, mat[static_cast<size_t>(i)][static_cast<size_t>(j)].eval(point));
        ms.push_back(std::move(a));
    }
    return new_tuple(std::move(ms));
}

FamilyReport analyze_family(const MatrixFamily& fam, const std::vector<int>& grid_counts,
                            double tol) {
    if (static_cast<int>(grid_counts.size()) != fam.m)
        throw DimensionMismatch("grid spec axis count differs from the base dimension");
    FamilyReport rep;
    rep.m = fam.m;
    rep.r = fam.r;
    rep.n = fam.n;
    rep.tol = tol;
    for (int i = 0; i < fam.m; ++i)
        rep.axes.push_back(axis_samples(fam.window[static_cast<size_t>(i)],
                                        grid_counts[static_cast<size_t>(i)]));

    std::vector<int> idx(static_cast<size_t>(fam.m), 0);
    for (;;) {
        std::vector<mpq_class> x;
        for (int i = 0; i < fam.m; ++i)
            x.push_back(rep.axes[static_cast<size_t>(i)][static_cast<size_t>(idx[static_cast<size_t>(i)])]);
        FamilySample sample;
        sample.x = x;
        try {
            MatrixTuple exact = sample_fiber(fam, x);
            std::vector<DenseMatrix> numeric;
            for (const auto& m : exact.matrices) numeric.push_back(m.to_numeric());
            MatrixTuple t = new_tuple(std::move(numeric), tol);
            check_admissible(t, tol);
            sample.report = scheme_report(t, tol);
            sample.admissible = true;
        } catch (const Error& e) {
            sample.admissible = false;
            sample.error = e.code();
        }
        rep.samples.push_back(std::move(sample));

        int pos = fam.m - 1;
        while (pos >= 0) {
            if (++idx[static_cast<size_t>(pos)] <
                static_cast<int>(rep.axes[static_cast<size_t>(pos)].size()))
                break;
            idx[static_cast<size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    return rep;
}

std::vector<BranchComponent> track_branches(const FamilyReport& report,
                                            const BranchOptions& options) {
    if (report.m != 1)
        throw std::invalid_argument("branch tracking is defined for one-dimensional bases");

    struct Node {
        int sample;
        int point;
        std::vector<double> q;
        int mult;
    };
    std::vector<Node> nodes;
    std::vector<std::vector<int>> node_at_sample(report.samples.size());
    for (size_t s = 0; s < report.samples.size(); ++s) {
        const auto& smp = report.samples[s];
        if (!smp.admissible || !smp.report) continue;
        for (size_t p = 0; p < smp.report->support.size(); ++p) {
            node_at_sample[s].push_back(static_cast<int>(nodes.size()));
            nodes.push_back(Node{static_cast<int>(s), static_cast<int>(p),
                                 support_coords(smp.report->support[p]),
                                 smp.report->support[p].multiplicity});
        }
    }

    // Estimated per-step motion: the largest nearest-neighbor distance over
    // adjacent admissible sample pairs.
    double motion = 0.0;
    for (size_t s = 0; s + 1 < report.samples.size(); ++s) {
        if (node_at_sample[s].empty() || node_at_sample[s + 1].empty()) continue;
        for (int a : node_at_sample[s]) {
            double best = -1.0;
            for (int b : node_at_sample[s + 1]) {
                double d = point_distance(nodes[static_cast<size_t>(a)].q,
                                          nodes[static_cast<size_t>(b)].q);
                if (best < 0 || d < best) best = d;
            }
            motion = std::max(motion, best);
        }
    }
    const double radius = options.radius.value_or(4.0 * motion + 1e-12);
    const double tie_tol = std::max(1e-12, options.tie_fraction * radius);

    UnionFind uf(static_cast<int>(nodes.size()));
    auto link_direction = [&](const std::vector<int>& from, const std::vector<int>& to) {
        for (int a : from) {
            std::vector<std::pair<double, int>> cand;
            for (int b : to) {
                double d = point_distance(nodes[static_cast<size_t>(a)].q,
                                          nodes[static_cast<size_t>(b)].q);
                if (d <= radius) cand.push_back({d, b});
            }
            if (cand.empty()) continue;
            std::sort(cand.begin(), cand.end());
            std::vector<int> tied;
            for (const auto& [d, b] : cand)
                if (d <= cand[0].first + tie_tol) tied.push_back(b);
            if (tied.size() == 1) {
                uf.unite(a, tied[0]);
            } else if (nodes[static_cast<size_t>(a)].mult >= static_cast<int>(tied.size())) {
                // A fat point carries enough strands to meet every tied
                // continuation: a multiplicity collision, not an ambiguity.
                for (int b : tied) uf.unite(a, b);
            } else {
                std::ostringstream os;
                os << "support point at sample " << nodes[static_cast<size_t>(a)].sample
                   << " has " << tied.size() << " continuations within the tie tolerance";
                throw MatchingAmbiguity(os.str());
            }
        }
    };
    for (size_t s = 0; s + 1 < report.samples.size(); ++s) {
        if (node_at_sample[s].empty() || node_at_sample[s + 1].empty()) continue;
        link_direction(node_at_sample[s], node_at_sample[s + 1]);
        link_direction(node_at_sample[s + 1], node_at_sample[s]);
    }

    std::vector<std::vector<int>> groups(nodes.size());
    for (size_t i = 0; i < nodes.size(); ++i)
        groups[static_cast<size_t>(uf.find(static_cast<int>(i)))].push_back(static_cast<int>(i));

    std::vector<BranchComponent> out;
    for (const auto& g : groups) {
        if (g.empty()) continue;
        BranchComponent c;
        for (int id : g) {
            const Node& nd = nodes[static_cast<size_t>(id)];
            c.nodes.push_back(BranchNode{nd.sample, nd.q, nd.mult});
            if (std::find(c.samples.begin(), c.samples.end(), nd.sample) == c.samples.end())
                c.samples.push_back(nd.sample);
        }
        std::sort(c.samples.begin(), c.samples.end());
        std::sort(c.nodes.begin(), c.nodes.end(), [](const BranchNode& a, const BranchNode& b) {
            if (a.sample != b.sample) return a.sample < b.sample;
            return a.q < b.q;
        });
        out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end(), [](const BranchComponent& a, const BranchComponent& b) {
        if (a.samples.front() != b.samples.front()) return a.samples.front() < b.samples.front();
        return a.nodes.front().q < b.nodes.front().q;
    });
    return out;
}

SurrogateFamilyReport surrogate_family(const MatrixFamily& generators,
                                       const std::vector<int>& grid_counts) {
    if (static_cast<int>(grid_counts.size()) != generators.m)
        throw DimensionMismatch("grid spec axis count differs from the base dimension");
    SurrogateFamilyReport rep;
    rep.m = generators.m;
    rep.r = generators.r;
    for (int i = 0; i < generators.m; ++i)
        rep.axes.push_back(axis_samples(generators.window[static_cast<size_t>(i)],
                                        grid_counts[static_cast<size_t>(i)]));

    std::vector<int> idx(static_cast<size_t>(generators.m), 0);
    for (;;) {
        std::vector<mpq_class> x;
        for (int i = 0; i < generators.m; ++i)
            x.push_back(rep.axes[static_cast<size_t>(i)][static_cast<size_t>(idx[static_cast<size_t>(i)])]);
        SurrogateSample sample;
        sample.x = x;
        try {
            std::vector<DenseMatrix> gens;
            if (generators.n > 0) gens = sample_fiber(generators, x).matrices;
            SurrogateAlgebra alg = surrogate(generators.r, gens);
            sample.dim = alg.algebra.dim;
            sample.factor_count = static_cast<int>(alg.decomposition.factors.size());
            sample.complex_residue = alg.has_complex_residue;
        } catch (const Error& e) {
            sample.error = e.code();
        }
        rep.samples.push_back(std::move(sample));

        int pos = generators.m - 1;
        while (pos >= 0) {
            if (++idx[static_cast<size_t>(pos)] <
                static_cast<int>(rep.axes[static_cast<size_t>(pos)].size()))
                break;
            idx[static_cast<size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
    }

    for (size_t s = 0; s < rep.samples.size(); ++s) {
        const auto& smp = rep.samples[s];
        if (!smp.error.empty()) continue;
        auto it = std::find_if(rep.strata.begin(), rep.strata.end(), [&](const SurrogateStratum& st) {
            return st.dim == smp.dim && st.factor_count == smp.factor_count;
        });
        if (it == rep.strata.end()) {
            rep.strata.push_back(SurrogateStratum{smp.dim, smp.factor_count, {}});
            it = rep.strata.end() - 1;
        }
        it->samples.push_back(static_cast<int>(s));
    }
    std::sort(rep.strata.begin(), rep.strata.end(), [](const SurrogateStratum& a, const SurrogateStratum& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        return a.factor_count < b.factor_count;
    });
    return rep;
}

}  // namespace mscheme
