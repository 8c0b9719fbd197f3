#include "hkr/rees.hpp"

#include <algorithm>

namespace hkr {
namespace rees {

using cx::ChainComplex;
using cx::ChainMap;
using cx::FilteredComplex;
using cx::GradedComplex;

ChainMap ReesModule::t_map(int i) const {
    if (i < 0 || i + 1 > top_weight()) throw MathError("rees: t map index out of range");
    ChainMap f;
    f.src = &pieces[static_cast<size_t>(i + 1)];
    f.dst = &pieces[static_cast<size_t>(i)];
    f.mats = t_maps[static_cast<size_t>(i)];
    return f;
}

void ReesModule::validate() const {
    if (pieces.empty()) throw MathError("rees: no weight pieces");
    if (t_maps.size() + 1 != pieces.size()) throw MathError("rees: t map count mismatch");
    for (const auto& P : pieces) {
        if (P.ring() != ring()) throw MathError("rees: ring mismatch between weights");
        P.validate();
    }
    for (int i = 0; i < top_weight(); ++i) t_map(i).validate();
}

bool ReesModule::t_injective() const {
    for (int i = 0; i < top_weight(); ++i)
        if (!t_map(i).injective()) return false;
    return true;
}

ReesModule rees_of(const FilteredComplex& F) {
    ReesModule R;
    for (int i = 0; i < F.length(); ++i) R.pieces.push_back(F.level(i));
    for (int i = 0; i + 1 < F.length(); ++i) R.t_maps.push_back(F.inclusion(i).mats);
    R.validate();
    R.honest = R.t_injective();
    return R;
}

GradedComplex fiber_at_zero(const ReesModule& R) {
    GradedComplex G;
    for (int i = 0; i < R.top_weight(); ++i) G.pieces.emplace(i, cx::quotient_by(R.t_map(i)).complex);
    G.pieces.emplace(R.top_weight(), R.pieces.back());
    return G;
}

ChainComplex fiber_at_one(const ReesModule& R) {
    // t is the identity below weight 0, so the colimit is the weight-0 piece.
    return R.pieces.front();
}

std::map<int, long> rank_per_weight(const ReesModule& R) {
    std::map<int, long> out;
    for (int i = 0; i <= R.top_weight(); ++i) {
        long r = 0;
        for (const auto& [d, rk] : R.pieces[static_cast<size_t>(i)].ranks()) {
            (void)d;
            r += rk;
        }
        out[i] = r;
    }
    return out;
}

namespace {

// Basis bookkeeping mirroring the tensor complex: (C (x) D)_n is the sum of
// C_a (x) D_b over a + b = n, blocks in increasing a, index i*rank(D_b)+j.
struct Blocks {
    std::vector<std::pair<int, int>> blocks;  // (a, offset)
    int total = 0;
};

Blocks tensor_blocks(const ChainComplex& C, const ChainComplex& D, int n) {
    Blocks ix;
    for (int a = C.min_degree(); a <= C.max_degree(); ++a) {
        int r = C.rank(a) * D.rank(n - a);
        if (r == 0) continue;
        ix.blocks.emplace_back(a, ix.total);
        ix.total += r;
    }
    return ix;
}

int block_offset(const Blocks& ix, int a) {
    for (const auto& [aa, off] : ix.blocks)
        if (aa == a) return off;
    return -1;
}

// Composite inclusion matrices level -> level 0, per level per degree.
std::vector<std::map<int, ExactMatrix>> composite_inclusions(const FilteredComplex& F) {
    std::vector<std::map<int, ExactMatrix>> comp(static_cast<size_t>(F.length()));
    const ChainComplex& F0 = F.level(0);
    for (const auto& [d, r] : F0.ranks())
        comp[0].emplace(d, ExactMatrix::identity(r, F.ring()));
    for (int i = 1; i < F.length(); ++i)
        for (const auto& [d, r] : F.level(i).ranks()) {
            if (r == 0) continue;
            ExactMatrix step = F.inclusion(i - 1).mat(d);
            auto it = comp[static_cast<size_t>(i - 1)].find(d);
            ExactMatrix prev = it != comp[static_cast<size_t>(i - 1)].end()
                                   ? it->second
                                   : ExactMatrix::zero(F0.rank(d), F.level(i - 1).rank(d), F.ring());
            comp[static_cast<size_t>(i)].emplace(d, prev * step);
        }
    return comp;
}

// Matrix of (incl_F (x) incl_G) : (F^i (x) G^j)_d -> (F^0 (x) G^0)_d in the
// block bases above.
ExactMatrix tensor_inclusion_matrix(const ChainComplex& Fi, const ChainComplex& Gj,
                                    const ChainComplex& F0, const ChainComplex& G0,
                                    const std::map<int, ExactMatrix>& fmats,
                                    const std::map<int, ExactMatrix>& gmats, int d,
                                    const BaseRing& ring) {
    Blocks sx = tensor_blocks(Fi, Gj, d);
    Blocks tx = tensor_blocks(F0, G0, d);
    ExactMatrix M(tx.total, sx.total, ring);
    for (const auto& [a, soff] : sx.blocks) {
        int b = d - a;
        int toff = block_offset(tx, a);
        if (toff < 0) throw MathError("day tensor: missing target block");
        const ExactMatrix& fa = fmats.at(a);
        const ExactMatrix& gb = gmats.at(b);
        for (int i = 0; i < fa.rows(); ++i)
            for (int ii = 0; ii < fa.cols(); ++ii) {
                if (ring.is_zero(fa.at(i, ii))) continue;
                for (int j = 0; j < gb.rows(); ++j)
                    for (int jj = 0; jj < gb.cols(); ++jj)
                        M.set(toff + i * gb.rows() + j, soff + ii * gb.cols() + jj,
                              fa.at(i, ii) * gb.at(j, jj));
            }
    }
    return M;
}

// Express each column of N in the column basis B (columns independent).
ExactMatrix in_basis(const ExactMatrix& B, const ExactMatrix& N) {
    ExactMatrix X(B.cols(), N.cols(), B.ring());
    for (int j = 0; j < N.cols(); ++j) {
        auto sol = solve(B, N.column_vec(j));
        if (!sol) throw MathError("day tensor: span is not closed");
        for (int i = 0; i < B.cols(); ++i) X.set(i, j, (*sol)[static_cast<size_t>(i)]);
    }
    return X;
}

}  // namespace

FilteredComplex day_tensor(const FilteredComplex& F, const FilteredComplex& G) {
    if (F.ring() != G.ring()) throw MathError("day tensor: ring mismatch");
    const BaseRing& ring = F.ring();
    if (!ring.is_field()) throw MathError("day tensor: field coefficients required");

    const ChainComplex& F0 = F.level(0);
    const ChainComplex& G0 = G.level(0);
    ChainComplex T0 = cx::tensor(F0, G0);
    auto compF = composite_inclusions(F);
    auto compG = composite_inclusions(G);
    const int N = (F.length() - 1) + (G.length() - 1);

    // Basis matrices of the level-n subcomplex inside T0, per degree.
    std::vector<std::map<int, ExactMatrix>> basis(static_cast<size_t>(N + 1));
    for (int n = 0; n <= N; ++n)
        for (const auto& [d, rT] : T0.ranks()) {
            if (n == 0) {
                basis[0].emplace(d, ExactMatrix::identity(rT, ring));
                continue;
            }
            ExactMatrix cols(rT, 0, ring);
            for (int i = std::max(0, n - (G.length() - 1)); i <= std::min(n, F.length() - 1); ++i) {
                int j = n - i;
                ExactMatrix M = tensor_inclusion_matrix(F.level(i), G.level(j), F0, G0,
                                                        compF[static_cast<size_t>(i)],
                                                        compG[static_cast<size_t>(j)], d, ring);
                cols = cols.hstack(M);
            }
            auto cb = column_space_basis(cols);
            basis[static_cast<size_t>(n)].emplace(d, matrix_from_columns(cb, rT, ring));
        }

    std::vector<ChainComplex> tower;
    for (int n = 0; n <= N; ++n) {
        ChainComplex L(ring);
        for (const auto& [d, B] : basis[static_cast<size_t>(n)]) L.set_rank(d, B.cols());
        for (const auto& [d, B] : basis[static_cast<size_t>(n)]) {
            if (B.cols() == 0 || !T0.has_differential(d)) continue;
            auto below = basis[static_cast<size_t>(n)].find(d - 1);
            ExactMatrix img = T0.differential(d) * B;
            if (below == basis[static_cast<size_t>(n)].end() || below->second.cols() == 0) {
                if (!img.is_zero()) throw MathError("day tensor: span is not closed");
                continue;
            }
            L.set_differential(d, in_basis(below->second, img));
        }
        L.validate();
        tower.push_back(std::move(L));
    }

    std::vector<std::map<int, ExactMatrix>> inclusions;
    for (int n = 0; n < N; ++n) {
        std::map<int, ExactMatrix> inc;
        for (const auto& [d, Bn1] : basis[static_cast<size_t>(n + 1)])
            inc.emplace(d, in_basis(basis[static_cast<size_t>(n)].at(d), Bn1));
        inclusions.push_back(std::move(inc));
    }
    return FilteredComplex(std::move(tower), std::move(inclusions));
}

namespace {

// Is b in the column span of M, integrally over integral rings?
bool in_image(const ExactMatrix& M, const std::vector<Rat>& b) {
    if (M.ring().is_integral_like()) {
        SmithResult s = smith_normal_form(M);
        // U*M*V = D, so M x = b iff D y = U b has a solution with x = V y.
        std::vector<Rat> ub(static_cast<size_t>(M.rows()), Rat(0));
        for (int i = 0; i < M.rows(); ++i) {
            Rat acc(0);
            for (int j = 0; j < M.rows(); ++j) acc += s.U.at(i, j) * b[static_cast<size_t>(j)];
            ub[static_cast<size_t>(i)] = acc;
        }
        for (int i = 0; i < M.rows(); ++i) {
            Rat di = i < M.cols() ? s.D.at(i, i) : Rat(0);
            if (di == 0) {
                if (ub[static_cast<size_t>(i)] != 0) return false;
            } else if (ub[static_cast<size_t>(i)].get_num() % di.get_num() != 0) {
                return false;
            }
        }
        return true;
    }
    return solve(M, b).has_value();
}

}  // namespace

bool FilteredAlgebraData::multiplicative() const {
    const FilteredComplex& F = filt;
    const int r0 = F.level(0).rank(0);
    if (static_cast<int>(mult.size()) != r0) throw MathError("filtered algebra: mult table shape");
    auto comp = composite_inclusions(F);
    const int N = F.length() - 1;
    for (int i = 0; i <= N; ++i) {
        if (F.level(i).rank(0) == 0) continue;
        const ExactMatrix& Mi = comp[static_cast<size_t>(i)].at(0);
        for (int j = 0; i + j <= N; ++j) {
            if (F.level(j).rank(0) == 0) continue;
            const ExactMatrix& Mj = comp[static_cast<size_t>(j)].at(0);
            auto ij = comp[static_cast<size_t>(i + j)].find(0);
            ExactMatrix Mij = ij != comp[static_cast<size_t>(i + j)].end()
                                  ? ij->second
                                  : ExactMatrix::zero(r0, 0, F.ring());
            for (int u = 0; u < Mi.cols(); ++u)
                for (int v = 0; v < Mj.cols(); ++v) {
                    std::vector<Rat> prod(static_cast<size_t>(r0), Rat(0));
                    for (int a = 0; a < r0; ++a) {
                        if (Mi.at(a, u) == 0) continue;
                        for (int b = 0; b < r0; ++b) {
                            if (Mj.at(b, v) == 0) continue;
                            for (int c = 0; c < r0; ++c)
                                prod[static_cast<size_t>(c)] +=
                                    Mi.at(a, u) * Mj.at(b, v) *
                                    mult[static_cast<size_t>(a)][static_cast<size_t>(b)]
                                        [static_cast<size_t>(c)];
                        }
                    }
                    if (!in_image(Mij, prod)) return false;
                }
        }
    }
    return true;
}

}  // namespace rees
}  // namespace hkr
