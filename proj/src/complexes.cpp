#include "hkr/complexes.hpp"

#include <algorithm>

namespace hkr {
namespace cx {

void ChainComplex::set_rank(int degree, int rank) {
    if (rank < 0) throw MathError("negative rank");
    if (rank == 0)
        ranks_.erase(degree);
    else
        ranks_[degree] = rank;
}

int ChainComplex::rank(int degree) const {
    auto it = ranks_.find(degree);
    return it == ranks_.end() ? 0 : it->second;
}

void ChainComplex::set_differential(int degree, ExactMatrix d) {
    if (d.rows() != rank(degree - 1) || d.cols() != rank(degree))
        throw MathError("differential shape mismatch at degree " + std::to_string(degree));
    if (d.ring() != ring_) throw MathError("differential ring mismatch");
    diff_[degree] = std::move(d);
}

ExactMatrix ChainComplex::differential(int degree) const {
    auto it = diff_.find(degree);
    if (it != diff_.end()) return it->second;
    return ExactMatrix::zero(rank(degree - 1), rank(degree), ring_);
}

void ChainComplex::set_weights(int degree, std::vector<long> w) {
    if (static_cast<int>(w.size()) != rank(degree)) throw MathError("weights size mismatch");
    weights_[degree] = std::move(w);
}

const std::vector<long>* ChainComplex::weights(int degree) const {
    auto it = weights_.find(degree);
    return it == weights_.end() ? nullptr : &it->second;
}

int ChainComplex::min_degree() const { return ranks_.empty() ? 0 : ranks_.begin()->first; }
int ChainComplex::max_degree() const { return ranks_.empty() ? 0 : ranks_.rbegin()->first; }

void ChainComplex::validate() const {
    for (const auto& [n, d] : diff_) {
        if (d.rows() != rank(n - 1) || d.cols() != rank(n))
            throw MathError("differential shape mismatch at degree " + std::to_string(n));
        if (rank(n - 2) > 0 && rank(n) > 0) {
            if (!(differential(n - 1) * d).is_zero())
                throw MathError("d^2 != 0 at degree " + std::to_string(n));
        }
        const auto* wsrc = weights(n);
        const auto* wdst = weights(n - 1);
        if (wsrc && wdst) {
            for (int i = 0; i < d.rows(); ++i)
                for (int j = 0; j < d.cols(); ++j)
                    if (!ring_.is_zero(d.at(i, j)) &&
                        (*wdst)[static_cast<size_t>(i)] != (*wsrc)[static_cast<size_t>(j)])
                        throw MathError("differential does not preserve internal weight");
        }
    }
}

bool ChainComplex::operator==(const ChainComplex& o) const {
    if (ring_ != o.ring_ || ranks_ != o.ranks_) return false;
    for (const auto& [n, r] : ranks_) {
        (void)r;
        if (!(differential(n) == o.differential(n))) return false;
    }
    return true;
}

ExactMatrix ChainMap::mat(int degree) const {
    auto it = mats.find(degree);
    if (it != mats.end()) return it->second;
    return ExactMatrix::zero(dst->rank(degree), src->rank(degree), dst->ring());
}

void ChainMap::validate() const {
    if (src->ring() != dst->ring()) throw MathError("chain map ring mismatch");
    for (const auto& [n, r] : src->ranks()) {
        (void)r;
        ExactMatrix f = mat(n);
        if (f.rows() != dst->rank(n) || f.cols() != src->rank(n))
            throw MathError("chain map shape mismatch at degree " + std::to_string(n));
        // d o f = f o d
        if (!(dst->differential(n) * f == mat(n - 1) * src->differential(n)))
            throw MathError("not a chain map at degree " + std::to_string(n));
    }
}

bool ChainMap::injective() const {
    for (const auto& [n, r] : src->ranks()) {
        if (r == 0) continue;
        if (rank(mat(n)) != r) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Homology
// ---------------------------------------------------------------------------

namespace {

// p-primary part of an invariant factor (PLocal reporting).
Int p_part(Int d, const Int& p) {
    Int r(1);
    while (d % p == 0) {
        r *= p;
        d /= p;
    }
    return r;
}

}  // namespace

HomologyCoords homology_coords(const ChainComplex& C, int degree) {
    const BaseRing& ring = C.ring();
    HomologyCoords out;
    int n = C.rank(degree);
    ExactMatrix dn = C.differential(degree);
    ExactMatrix dnext = C.differential(degree + 1);
    if (n == 0) {
        out.cycle_basis = ExactMatrix::zero(0, 0, ring);
        out.boundary_coords = ExactMatrix::zero(0, dnext.cols(), ring);
        return out;
    }

    std::vector<std::vector<Rat>> kb;
    if (C.rank(degree - 1) == 0) {
        for (int j = 0; j < n; ++j) {
            std::vector<Rat> e(static_cast<size_t>(n), Rat(0));
            e[static_cast<size_t>(j)] = 1;
            kb.push_back(std::move(e));
        }
    } else if (ring.is_field()) {
        kb = kernel_basis(dn);
    } else {
        kb = integer_kernel(dn);
    }
    int z = static_cast<int>(kb.size());
    out.cycle_basis = matrix_from_columns(kb, n, ring);

    // Boundaries in cycle coordinates. The kernel basis spans a direct
    // summand over Z, so the rational solve has entries in the ring.
    ExactMatrix X(z, dnext.cols(), ring);
    for (int j = 0; j < dnext.cols(); ++j) {
        auto y = solve(out.cycle_basis, dnext.column_vec(j));
        if (!y) throw MathError("boundary is not a cycle (d^2 != 0?)");
        for (int i = 0; i < z; ++i) X.set(i, j, (*y)[static_cast<size_t>(i)]);
    }
    out.boundary_coords = X;

    if (ring.is_field()) {
        out.group.free_rank = z - rank(X);
    } else {
        SmithResult s = smith_normal_form(X);
        out.group.free_rank = z - s.rank;
        for (int i = 0; i < s.rank; ++i) {
            Int d = s.D.at(i, i).get_num();
            if (ring.kind() == RingKind::PLocalIntegers) {
                Int dp = p_part(d, ring.p());
                if (dp != d) out.group.prime_to_p_torsion_dropped = true;
                d = dp;
            }
            if (d > 1) out.group.torsion.push_back(d);
        }
        std::sort(out.group.torsion.begin(), out.group.torsion.end());
    }
    return out;
}

HomologyGroup homology_at(const ChainComplex& C, int degree) {
    return homology_coords(C, degree).group;
}

std::map<int, HomologyGroup> homology(const ChainComplex& C, int lo, int hi) {
    std::map<int, HomologyGroup> out;
    for (int n = lo; n <= hi; ++n) out[n] = homology_at(C, n);
    return out;
}

bool classes_generate_homology(const HomologyCoords& h, const ExactMatrix& cycles) {
    int z = h.cycle_basis.cols();
    const BaseRing& ring = cycles.ring();
    ExactMatrix Y(z, cycles.cols(), ring);
    for (int j = 0; j < cycles.cols(); ++j) {
        auto y = solve(h.cycle_basis, cycles.column_vec(j));
        if (!y) return false;  // not even a cycle
        for (int i = 0; i < z; ++i) {
            Rat v = (*y)[static_cast<size_t>(i)];
            try {
                Y.set(i, j, v);
            } catch (const MathError&) {
                return false;  // non-integral coordinates
            }
        }
    }
    ExactMatrix full = h.boundary_coords.hstack(Y);
    if (ring.is_field()) return rank(full) == z;
    SmithResult s = smith_normal_form(full);
    if (s.rank != z) return false;
    for (int i = 0; i < z; ++i)
        if (s.D.at(i, i) != 1 && s.D.at(i, i) != -1) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Mixed complexes and u-totalization
// ---------------------------------------------------------------------------

ExactMatrix MixedComplex::b_op(int degree) const {
    auto it = B.find(degree);
    if (it != B.end()) return it->second;
    return ExactMatrix::zero(underlying.rank(degree + 1), underlying.rank(degree),
                             underlying.ring());
}

void MixedComplex::validate() const {
    underlying.validate();
    for (const auto& [n, Bn] : B) {
        if (Bn.rows() != underlying.rank(n + 1) || Bn.cols() != underlying.rank(n))
            throw MathError("B shape mismatch at degree " + std::to_string(n));
        if (!(b_op(n + 1) * Bn).is_zero())
            throw MathError("B^2 != 0 at degree " + std::to_string(n));
        // d_{n+1} B_n + B_{n-1} d_n = 0
        ExactMatrix lhs = underlying.differential(n + 1) * Bn + b_op(n - 1) * underlying.differential(n);
        if (!lhs.is_zero()) throw MathError("dB + Bd != 0 at degree " + std::to_string(n));
        const auto* wsrc = underlying.weights(n);
        const auto* wdst = underlying.weights(n + 1);
        if (wsrc && wdst) {
            for (int i = 0; i < Bn.rows(); ++i)
                for (int j = 0; j < Bn.cols(); ++j)
                    if (!underlying.ring().is_zero(Bn.at(i, j)) &&
                        (*wdst)[static_cast<size_t>(i)] !=
                            (*wsrc)[static_cast<size_t>(j)] + 1)
                        throw MathError("B does not raise internal weight by 1");
        }
    }
}

TotalIndexer total_u_indexer(const MixedComplex& M, int u_order, int n) {
    TotalIndexer ix;
    ix.block_offset.resize(static_cast<size_t>(u_order));
    int off = 0;
    for (int j = 0; j < u_order; ++j) {
        ix.block_offset[static_cast<size_t>(j)] = off;
        off += M.underlying.rank(n + 2 * j);
    }
    ix.total = off;
    return ix;
}

ChainComplex total_u_complex(const MixedComplex& M, int u_order, int lo, int hi) {
    if (u_order < 1) throw MathError("total_u_complex: u_order >= 1 required");
    ChainComplex T(M.underlying.ring());
    for (int n = lo - 1; n <= hi + 1; ++n) T.set_rank(n, total_u_indexer(M, u_order, n).total);
    for (int n = lo; n <= hi + 1; ++n) {
        TotalIndexer sx = total_u_indexer(M, u_order, n);
        TotalIndexer tx = total_u_indexer(M, u_order, n - 1);
        if (sx.total == 0 || tx.total == 0) continue;
        ExactMatrix d(tx.total, sx.total, M.underlying.ring());
        for (int j = 0; j < u_order; ++j) {
            int src_deg = n + 2 * j;
            int so = sx.block_offset[static_cast<size_t>(j)];
            // d-part: column j -> column j.
            ExactMatrix dj = M.underlying.differential(src_deg);
            int to = tx.block_offset[static_cast<size_t>(j)];
            for (int r = 0; r < dj.rows(); ++r)
                for (int c = 0; c < dj.cols(); ++c) d.set(to + r, so + c, dj.at(r, c));
            // uB-part: column j -> column j+1 (dropped at the truncation).
            if (j + 1 < u_order) {
                ExactMatrix Bj = M.b_op(src_deg);
                int tb = tx.block_offset[static_cast<size_t>(j + 1)];
                for (int r = 0; r < Bj.rows(); ++r)
                    for (int c = 0; c < Bj.cols(); ++c) d.set(tb + r, so + c, Bj.at(r, c));
            }
        }
        T.set_differential(n, std::move(d));
    }
    T.validate();
    return T;
}

// ---------------------------------------------------------------------------
// Filtered complexes
// ---------------------------------------------------------------------------

FilteredComplex::FilteredComplex(std::vector<ChainComplex> tower,
                                 std::vector<std::map<int, ExactMatrix>> inclusions)
    : tower_(std::move(tower)), inclusions_(std::move(inclusions)) {
    if (tower_.empty()) throw MathError("empty filtration tower");
    if (inclusions_.size() + 1 != tower_.size())
        throw MathError("filtration tower/inclusion count mismatch");
    for (const auto& c : tower_) {
        if (c.ring() != tower_.front().ring()) throw MathError("filtration ring mismatch");
        c.validate();
    }
    for (int i = 0; i + 1 < length(); ++i) {
        ChainMap f = inclusion(i);
        f.validate();
        if (!f.injective())
            throw MathError("filtration transition not injective at level " + std::to_string(i));
    }
}

const ChainComplex& FilteredComplex::level(int i) const {
    if (i < 0) return tower_.front();
    if (i >= length()) throw MathError("filtration level out of range");
    return tower_[static_cast<size_t>(i)];
}

ChainMap FilteredComplex::inclusion(int i) const {
    if (i < 0 || i + 1 >= length()) throw MathError("inclusion index out of range");
    ChainMap f;
    f.src = &tower_[static_cast<size_t>(i + 1)];
    f.dst = &tower_[static_cast<size_t>(i)];
    f.mats = inclusions_[static_cast<size_t>(i)];
    return f;
}

namespace {

// Projection/section pair splitting off the image of an injective column map.
struct Split {
    ExactMatrix proj;     // r x r source-to-quotient-coordinates: (r-s) x r
    ExactMatrix section;  // r x (r-s)
};

Split split_injection(const ExactMatrix& iota) {
    const BaseRing& ring = iota.ring();
    int r = iota.rows(), s = iota.cols();
    if (ring.is_integral_like()) {
        SmithResult snf = smith_normal_form(iota);
        if (snf.rank != s) throw MathError("split_injection: map not injective");
        for (int i = 0; i < s; ++i)
            if (snf.D.at(i, i) != 1)
                throw MathError("filtration transition not degreewise split over " + ring.name());
        ExactMatrix Uinv = inverse(snf.U);
        Split out;
        out.proj = ExactMatrix(r - s, r, ring);
        for (int i = 0; i < r - s; ++i)
            for (int j = 0; j < r; ++j) out.proj.set(i, j, snf.U.at(s + i, j));
        out.section = ExactMatrix(r, r - s, ring);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r - s; ++j) out.section.set(i, j, Uinv.at(i, s + j));
        return out;
    }
    if (!ring.is_field()) throw MathError("split_injection: unsupported ring " + ring.name());
    // Extend the columns of iota to a basis by greedy standard vectors.
    ExactMatrix P = iota;
    for (int e = 0; e < r && P.cols() < r; ++e) {
        ExactMatrix ecol(r, 1, ring);
        ecol.set(e, 0, 1);
        ExactMatrix cand = P.hstack(ecol);
        if (rank(cand) == cand.cols()) P = cand;
    }
    if (P.cols() != r) throw MathError("split_injection: map not injective");
    ExactMatrix Pinv = inverse(P);
    Split out;
    out.proj = ExactMatrix(r - s, r, ring);
    for (int i = 0; i < r - s; ++i)
        for (int j = 0; j < r; ++j) out.proj.set(i, j, Pinv.at(s + i, j));
    out.section = ExactMatrix(r, r - s, ring);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r - s; ++j) out.section.set(i, j, P.at(i, s + j));
    return out;
}

}  // namespace

QuotientData quotient_by(const ChainMap& incl) {
    const ChainComplex& dst = *incl.dst;
    const BaseRing& ring = dst.ring();
    QuotientData out{ChainComplex(ring), {}};
    std::map<int, Split> splits;
    for (const auto& [n, r] : dst.ranks()) {
        (void)r;
        Split sp = split_injection(incl.mat(n));
        out.complex.set_rank(n, sp.proj.rows());
        out.projection[n] = sp.proj;
        splits[n] = std::move(sp);
    }
    for (const auto& [n, sp] : splits) {
        if (out.complex.rank(n) == 0 || out.complex.rank(n - 1) == 0) continue;
        auto it = splits.find(n - 1);
        if (it == splits.end()) continue;
        out.complex.set_differential(n, it->second.proj * dst.differential(n) * sp.section);
    }
    out.complex.validate();
    return out;
}

GradedComplex associated_graded(const FilteredComplex& F) {
    GradedComplex g;
    for (int i = 0; i + 1 < F.length(); ++i)
        g.pieces.emplace(i, quotient_by(F.inclusion(i)).complex);
    // F^{N+1} = 0, so the top piece is F^N itself.
    g.pieces.emplace(F.length() - 1, F.level(F.length() - 1));
    return g;
}

// ---------------------------------------------------------------------------
// Cone and tensor
// ---------------------------------------------------------------------------

ChainComplex cone(const ChainMap& f) {
    f.validate();
    const ChainComplex& C = *f.src;
    const ChainComplex& D = *f.dst;
    const BaseRing& ring = C.ring();
    ChainComplex K(ring);
    int lo = std::min(C.min_degree(), D.min_degree()) - 1;
    int hi = std::max(C.max_degree(), D.max_degree()) + 1;
    for (int n = lo; n <= hi; ++n) K.set_rank(n, C.rank(n - 1) + D.rank(n));
    for (int n = lo + 1; n <= hi; ++n) {
        int rows = K.rank(n - 1), cols = K.rank(n);
        if (rows == 0 || cols == 0) continue;
        ExactMatrix d(rows, cols, ring);
        ExactMatrix dc = C.differential(n - 1);
        ExactMatrix dd = D.differential(n);
        ExactMatrix fm = f.mat(n - 1);
        // blocks: [ -d_C  0 ; -f  d_D ]
        for (int i = 0; i < dc.rows(); ++i)
            for (int j = 0; j < dc.cols(); ++j) d.set(i, j, -dc.at(i, j));
        for (int i = 0; i < fm.rows(); ++i)
            for (int j = 0; j < fm.cols(); ++j) d.set(C.rank(n - 2) + i, j, -fm.at(i, j));
        for (int i = 0; i < dd.rows(); ++i)
            for (int j = 0; j < dd.cols(); ++j) d.set(C.rank(n - 2) + i, C.rank(n - 1) + j, dd.at(i, j));
        K.set_differential(n, std::move(d));
    }
    K.validate();
    return K;
}

namespace {

// Basis bookkeeping for (C (x) D)_n = sum_{a+b=n} C_a (x) D_b, blocks in
// increasing a; within a block, index = i * rank(D_b) + j.
struct TensorIndexer {
    std::vector<std::pair<int, int>> blocks;  // (a, offset)
    int total = 0;
};

TensorIndexer tensor_indexer(const ChainComplex& C, const ChainComplex& D, int n) {
    TensorIndexer ix;
    for (int a = C.min_degree(); a <= C.max_degree(); ++a) {
        int b = n - a;
        int r = C.rank(a) * D.rank(b);
        if (r == 0) continue;
        ix.blocks.emplace_back(a, ix.total);
        ix.total += r;
    }
    return ix;
}

int tensor_block_offset(const TensorIndexer& ix, int a) {
    for (const auto& [aa, off] : ix.blocks)
        if (aa == a) return off;
    return -1;
}

}  // namespace

ChainComplex tensor(const ChainComplex& C, const ChainComplex& D) {
    if (C.ring() != D.ring()) throw MathError("tensor: ring mismatch");
    const BaseRing& ring = C.ring();
    ChainComplex T(ring);
    int lo = C.min_degree() + D.min_degree();
    int hi = C.max_degree() + D.max_degree();
    for (int n = lo; n <= hi; ++n) T.set_rank(n, tensor_indexer(C, D, n).total);
    for (int n = lo + 1; n <= hi; ++n) {
        TensorIndexer sx = tensor_indexer(C, D, n);
        TensorIndexer tx = tensor_indexer(C, D, n - 1);
        if (sx.total == 0 || tx.total == 0) continue;
        ExactMatrix d(tx.total, sx.total, ring);
        for (const auto& [a, soff] : sx.blocks) {
            int b = n - a;
            int rc = C.rank(a), rd = D.rank(b);
            // dC (x) 1 : block (a,b) -> (a-1,b)
            ExactMatrix dc = C.differential(a);
            int toff = tensor_block_offset(tx, a - 1);
            if (toff >= 0 && dc.rows() > 0) {
                for (int i = 0; i < dc.rows(); ++i)
                    for (int ii = 0; ii < rc; ++ii) {
                        if (ring.is_zero(dc.at(i, ii))) continue;
                        for (int j = 0; j < rd; ++j)
                            d.set(toff + i * rd + j, soff + ii * rd + j,
                                  d.at(toff + i * rd + j, soff + ii * rd + j) + dc.at(i, ii));
                    }
            }
            // (-1)^a 1 (x) dD : block (a,b) -> (a,b-1)
            ExactMatrix dd = D.differential(b);
            int toff2 = tensor_block_offset(tx, a);
            if (toff2 >= 0 && dd.rows() > 0) {
                Rat sign = (a % 2 == 0) ? Rat(1) : Rat(-1);
                int rd2 = D.rank(b - 1);
                for (int i = 0; i < rc; ++i)
                    for (int j = 0; j < dd.rows(); ++j)
                        for (int jj = 0; jj < rd; ++jj) {
                            if (ring.is_zero(dd.at(j, jj))) continue;
                            d.set(toff2 + i * rd2 + j, soff + i * rd + jj,
                                  d.at(toff2 + i * rd2 + j, soff + i * rd + jj) +
                                      sign * dd.at(j, jj));
                        }
            }
        }
        T.set_differential(n, std::move(d));
    }
    T.validate();
    return T;
}

MixedComplex tensor_mixed(const MixedComplex& Cm, const MixedComplex& Dm) {
    const ChainComplex& C = Cm.underlying;
    const ChainComplex& D = Dm.underlying;
    const BaseRing& ring = C.ring();
    MixedComplex M(ring);
    M.underlying = tensor(C, D);
    int lo = M.underlying.min_degree();
    int hi = M.underlying.max_degree();
    for (int n = lo; n <= hi; ++n) {
        TensorIndexer sx = tensor_indexer(C, D, n);
        TensorIndexer tx = tensor_indexer(C, D, n + 1);
        if (sx.total == 0 || tx.total == 0) continue;
        ExactMatrix Bn(tx.total, sx.total, ring);
        for (const auto& [a, soff] : sx.blocks) {
            int b = n - a;
            int rc = C.rank(a), rd = D.rank(b);
            // B_C (x) 1 : (a,b) -> (a+1,b)
            ExactMatrix bc = Cm.b_op(a);
            int toff = tensor_block_offset(tx, a + 1);
            if (toff >= 0 && bc.rows() > 0) {
                for (int i = 0; i < bc.rows(); ++i)
                    for (int ii = 0; ii < rc; ++ii) {
                        if (ring.is_zero(bc.at(i, ii))) continue;
                        for (int j = 0; j < rd; ++j)
                            Bn.set(toff + i * rd + j, soff + ii * rd + j,
                                   Bn.at(toff + i * rd + j, soff + ii * rd + j) + bc.at(i, ii));
                    }
            }
            // (-1)^a 1 (x) B_D : (a,b) -> (a,b+1)
            ExactMatrix bd = Dm.b_op(b);
            int toff2 = tensor_block_offset(tx, a);
            if (toff2 >= 0 && bd.rows() > 0) {
                Rat sign = (a % 2 == 0) ? Rat(1) : Rat(-1);
                int rd2 = D.rank(b + 1);
                for (int i = 0; i < rc; ++i)
                    for (int j = 0; j < bd.rows(); ++j)
                        for (int jj = 0; jj < rd; ++jj) {
                            if (ring.is_zero(bd.at(j, jj))) continue;
                            Bn.set(toff2 + i * rd2 + j, soff + i * rd + jj,
                                   Bn.at(toff2 + i * rd2 + j, soff + i * rd + jj) +
                                       sign * bd.at(j, jj));
                        }
            }
        }
        if (!Bn.is_zero()) M.B[n] = std::move(Bn);
    }
    M.validate();
    return M;
}

}  // namespace cx
}  // namespace hkr
