#pragma once

#include <map>
#include <vector>

#include "hkr/matrix.hpp"

namespace hkr {
namespace cx {

struct HomologyGroup {
    long free_rank = 0;
    std::vector<Int> torsion;  // nontrivial invariant factors (>1), ascending
    bool prime_to_p_torsion_dropped = false;  // PLocal bookkeeping

    bool operator==(const HomologyGroup& o) const {
        return free_rank == o.free_rank && torsion == o.torsion;
    }
    bool is_zero() const { return free_rank == 0 && torsion.empty(); }
};

/// Finitely supported homological chain complex: d_n : C_n -> C_{n-1}.
/// d o d = 0 and (when weights are present) weight preservation are checked
/// by validate(), which every constructor path calls.
class ChainComplex {
public:
    explicit ChainComplex(BaseRing ring) : ring_(ring) {}

    const BaseRing& ring() const { return ring_; }
    void set_rank(int degree, int rank);
    int rank(int degree) const;
    void set_differential(int degree, ExactMatrix d);
    /// d_n (zero matrix of the right shape if absent).
    ExactMatrix differential(int degree) const;
    bool has_differential(int degree) const { return diff_.count(degree) > 0; }
    void set_weights(int degree, std::vector<long> w);
    const std::vector<long>* weights(int degree) const;

    int min_degree() const;
    int max_degree() const;
    const std::map<int, int>& ranks() const { return ranks_; }

    void validate() const;

    bool operator==(const ChainComplex& o) const;

private:
    BaseRing ring_;
    std::map<int, int> ranks_;
    std::map<int, ExactMatrix> diff_;
    std::map<int, std::vector<long>> weights_;
};

/// Chain map f : src -> dst, one matrix per degree.
struct ChainMap {
    const ChainComplex* src = nullptr;
    const ChainComplex* dst = nullptr;
    std::map<int, ExactMatrix> mats;

    ExactMatrix mat(int degree) const;
    void validate() const;  // commutes with differentials, shapes match
    bool injective() const;
};

std::map<int, HomologyGroup> homology(const ChainComplex& C, int lo, int hi);
HomologyGroup homology_at(const ChainComplex& C, int degree);

/// Internal coordinates of a homology computation, for induced-map work:
/// cycle basis (columns) and the presentation of boundaries in that basis.
struct HomologyCoords {
    ExactMatrix cycle_basis;     // rank(C_n) x z, columns span ker d_n
    ExactMatrix boundary_coords; // z x b, boundaries expressed in cycle basis
    HomologyGroup group;
};
HomologyCoords homology_coords(const ChainComplex& C, int degree);

/// Coordinates of classes in the quotient: given cycles (columns), check
/// they are cycles and return whether together with the boundaries they
/// generate the full homology (i.e. the induced map from the span is onto).
bool classes_generate_homology(const HomologyCoords& h, const ExactMatrix& cycles);

struct MixedComplex {
    ChainComplex underlying;
    std::map<int, ExactMatrix> B;  // B_n : M_n -> M_{n+1}

    explicit MixedComplex(BaseRing ring) : underlying(ring) {}
    ExactMatrix b_op(int degree) const;
    void validate() const;  // B*B = 0, dB + Bd = 0 (+ weight raise by 1)
};

/// Product totalization of (M[[u]], d + uB) truncated at u^U; u has
/// homological degree -2. Degree-n component is the direct sum over
/// 0 <= j < U of M_{n+2j} (coefficient of u^j).
ChainComplex total_u_complex(const MixedComplex& M, int u_order, int lo, int hi);

/// Index of the u^j-column block of M at total degree n inside the
/// totalization's basis ordering (columns ordered by increasing j).
struct TotalIndexer {
    std::vector<int> block_offset;  // per j
    int total = 0;
};
TotalIndexer total_u_indexer(const MixedComplex& M, int u_order, int n);

class FilteredComplex {
public:
    /// tower F^0 >= F^1 >= ... >= F^N; inclusions[i] : F^{i+1} -> F^i.
    FilteredComplex(std::vector<ChainComplex> tower, std::vector<std::map<int, ExactMatrix>> inclusions);

    int length() const { return static_cast<int>(tower_.size()); }  // N+1 levels
    const ChainComplex& level(int i) const;
    ChainMap inclusion(int i) const;  // F^{i+1} -> F^i
    const BaseRing& ring() const { return tower_.front().ring(); }

private:
    std::vector<ChainComplex> tower_;
    std::vector<std::map<int, ExactMatrix>> inclusions_;
};

struct GradedComplex {
    std::map<int, ChainComplex> pieces;  // weight -> complex
};

/// Weight-i piece = F^i / F^{i+1}, computed degreewise through the split
/// injection (SNF over integral rings, elimination over fields).
GradedComplex associated_graded(const FilteredComplex& F);

/// Quotient of dst by the image of an injective chain map. Returns the
/// quotient complex together with projection matrices per degree.
struct QuotientData {
    ChainComplex complex;
    std::map<int, ExactMatrix> projection;  // dst_n -> quotient_n
};
QuotientData quotient_by(const ChainMap& incl);

ChainComplex cone(const ChainMap& f);
ChainComplex tensor(const ChainComplex& C, const ChainComplex& D);
/// Tensor of mixed complexes, B = B_C (x) 1 + 1 (x) B_D with Koszul signs.
MixedComplex tensor_mixed(const MixedComplex& C, const MixedComplex& D);

}  // namespace cx
}  // namespace hkr
