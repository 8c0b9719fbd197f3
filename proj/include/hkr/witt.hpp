#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "hkr/carrier.hpp"
#include "hkr/poly.hpp"

namespace hkr {
namespace witt {

/// Universal p-typical Witt polynomials for truncation length m: sum,
/// product and negation laws plus the Frobenius (length-dropping) family,
/// all with integer coefficients in variables x_0..x_{m-1}, y_0..y_{m-1}.
/// Construction solves the Ghost equations over Q and divides exactly by
/// p^i at each stage; an inexact division aborts loudly.
struct WittLaw {
    Int p;
    int m = 0;
    std::vector<MultiPoly> sum;        // S_0..S_{m-1}, vars x,y
    std::vector<MultiPoly> product;    // P_0..P_{m-1}, vars x,y
    std::vector<MultiPoly> negation;   // N_0..N_{m-1}, vars x
    std::vector<MultiPoly> frobenius;  // F_0..F_{m-2}, vars x

    /// Cached, immutable. p <= 7, m <= 5 enforced.
    static const WittLaw& get(const Int& p, int m);
};

/// Variable lists used by WittLaw polynomials.
std::vector<std::string> xy_vars(int m);
std::vector<std::string> x_vars(int m);

/// Ghost polynomial omega_i = sum_{j<=i} p^j x_j^{p^(i-j)} in vars x_0..x_{m-1}.
MultiPoly ghost_poly(const Int& p, int m, int i, BaseRing ring);

/// Ghost composite omega_i(w) = sum_{j<=i} p^j w_j^{p^(i-j)} for polynomial
/// arguments w_j sharing one variable list. Uses packed-exponent arithmetic
/// when the exponent bounds fit a machine word.
MultiPoly ghost_compose(const Int& p, const std::vector<MultiPoly>& w, int i);

struct WittVector {
    Int p;
    int m = 0;
    CarrierPtr carrier;
    std::vector<Rat> coords;

    bool operator==(const WittVector& o) const;
    bool operator<(const WittVector& o) const { return coords < o.coords; }
    static WittVector zero(const Int& p, int m, CarrierPtr c);
    static WittVector make(const Int& p, int m, CarrierPtr c, std::vector<Rat> coords);
};

using GhostVector = std::vector<Rat>;

GhostVector ghost(const WittVector& w);

WittVector witt_add(const WittVector& a, const WittVector& b);
WittVector witt_mul(const WittVector& a, const WittVector& b);
WittVector witt_neg(const WittVector& a);
WittVector witt_sub(const WittVector& a, const WittVector& b);

/// Truncated Frobenius W^(m) -> W^(m-1) via the universal polynomials.
WittVector frobenius(const WittVector& w);
/// Full-length Frobenius over an F_p-algebra carrier: coordinatewise p-th power.
WittVector frobenius_modp(const WittVector& w);
/// Verschiebung (coordinate shift) -- plumbing only.
WittVector verschiebung(const WittVector& w);

WittVector teichmuller(const Rat& a, const Int& p, int m, CarrierPtr c);
/// Gm-action: (lambda_i) -> (a^(p^i) lambda_i).
WittVector gm_action(const Rat& a, const WittVector& w);
/// G_p interpolation map: w -> Frob_p(w) - [a^(p-1)](w) (F_p-algebra carrier).
WittVector gp_map(const WittVector& w, const Rat& a);

enum class KernelMapKind { FrobeniusMinusId, Frobenius, GpAt };

struct KernelResult {
    std::vector<WittVector> elements;
    bool subgroup_verified = false;
};

/// Exhaustive kernel enumeration over a finite carrier; verifies closure
/// under witt_add.
KernelResult enumerate_kernel(KernelMapKind kind, CarrierPtr ring, const Int& p, int m,
                              const Rat& gp_a = Rat(0));

struct CharZeroReport {
    bool fixed_is_diagonal = false;  // F(w)=w in Ghost coords <=> all ghosts equal
    bool kernel_is_first_ghost = false;  // F(w)=0 <=> (omega_0, 0, ..., 0)
    std::string detail;
};

/// Symbolic check over Q of Frobenius fixed points / kernel in Ghost coords.
CharZeroReport char_zero_fixed_points_check(const Int& p, int m);

struct FieldPointReport {
    bool q_frobenius_surjective = false;   // ghost-linearized F on W^(m+1) -> W^(m)
    bool q_frob_minus_id_surjective = false;
    struct FieldStat {
        std::string field;
        long size = 0;
        long image_pth_power = 0;      // |image of x -> x^p|
        long image_artin_schreier = 0; // |image of x -> x^p - x|
        bool pth_power_bijective = false;
        bool artin_schreier_index_p = false;  // |image| = size / p
    };
    std::vector<FieldStat> field_stats;
};

/// Surjectivity evidence at the field points used by the fpqc-cover proof:
/// symbolic over Q, image statistics over F_p, F_{p^2}, F_{p^3}.
FieldPointReport field_point_surjectivity_check(const Int& p, int m);

}  // namespace witt
}  // namespace hkr
