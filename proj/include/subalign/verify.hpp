#pragma once

#include "subalign/alignment.hpp"
#include "subalign/bounds.hpp"
#include "subalign/channel.hpp"
#include "subalign/sparsity.hpp"
#include "subalign/subspace.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace subalign {

// One precoding subspace per transmitter, all in the same T*L-dimensional space.
struct Scheme {
    std::size_t k = 0;
    std::size_t l = 0;
    std::size_t t = 1;
    std::vector<Subspace> subspaces;

    std::size_t ambient_dim() const { return t * l; }
    std::vector<std::size_t> dims() const;
    bool uniform_dims() const;
    std::size_t dim_per_user() const; // requires uniform_dims()
};

struct ReceiverReport {
    std::size_t signal_dim = 0;
    std::size_t interference_dim = 0;
    std::size_t overlap_dim = 0;
};

struct VerifyReport {
    bool feasible = false;
    std::vector<ReceiverReport> per_receiver;
    Rational dof;                // sum_i dim(V_i) / (T*L)
    std::optional<Rational> eps; // 1 - 2D/(TL), uniform-dimension schemes only
};

/// Decoding condition at every receiver: H_ii V_i meets sum_{j!=i} H_ij V_j
/// only at zero. Exact; feasible iff every overlap is zero-dimensional.
VerifyReport verify_decoding(const ChannelInstance& instance, const Scheme& scheme);

// Width requirement on a feasible uniform-dimension scheme: the width of V_i
// under T_ijk must not exceed 2*eps*T*L for all distinct i,j,k != 1.
struct WidthCheck {
    std::size_t i = 0, j = 0, k = 0;
    long width = 0;
    Rational bound;
    bool pass = false;
};

std::vector<WidthCheck> check_width_requirement(const ChannelInstance& instance,
                                                const Scheme& scheme);

// Sparsity requirement on a feasible uniform-dimension scheme:
// sp_N(V_i) >= 2N - eps*T*L for every user i and N = 1..D.
struct SparsityCheck {
    std::size_t user = 0;
    std::size_t n = 0;
    std::size_t sp = 0;
    Rational bound;
    bool pass = false;
    bool heuristic = false;
};

std::vector<SparsityCheck> check_sparsity_requirement(const ChannelInstance& instance,
                                                      const Scheme& scheme);

// Witness for the grid-span argument behind the quadratic diversity bound:
// contract n1 times along m1^-1, pick a maximal-support vector x there, grow
// the (n1+1) x (n2+1) grid under (m1, m2), and check sp_N(V)-1 >= (n1+1)(n2+1).
struct GridWitnessReport {
    std::size_t n1 = 0, n2 = 0;
    RowVector x;
    std::size_t x_support = 0;
    std::size_t sp_n = 0;
    std::size_t dim_v = 0;
    std::size_t grid_dim = 0;
    bool inequality_holds = false;
};

/// Preconditions: dim v = D with D = (1-eps)L/2, both widths <= 2*eps*L, and
/// sp_N(v) >= D + 1 (otherwise the grid exponent n2 would be negative).
GridWitnessReport grid_witness(const Subspace& v, const DiagMap& m1, const DiagMap& m2,
                               std::size_t n_target, const Rational& eps, std::size_t l);

/// V_i = coordinate block i of size d_per_user; feasible for every instance.
Scheme build_orthogonal_scheme(std::size_t k, std::size_t l, std::size_t t,
                               std::size_t d_per_user);

/// Builds per-user grid spans of instance-derived maps from a JSON pattern.
/// No feasibility claim; run the result through verify_decoding.
Scheme build_chain_scheme(const ChannelInstance& instance, const nlohmann::json& pattern);

struct SearchStats {
    std::size_t trials = 0;
    std::vector<std::size_t> receiver_failures; // first failing receiver per trial
};

/// Seeded random probing for a feasible scheme with uniform dimension d.
/// Returns the first hit in restart order, or nothing.
std::optional<Scheme> random_search(const ChannelInstance& instance, std::size_t d,
                                    std::size_t restarts, std::uint64_t seed,
                                    SearchStats* stats = nullptr);

} // namespace subalign
