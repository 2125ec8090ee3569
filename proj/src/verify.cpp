#include "subalign/verify.hpp"

#include "subalign/errors.hpp"
#include "subalign/sampling.hpp"

#include <algorithm>
#include <random>
#include <string>

namespace subalign {

std::vector<std::size_t> Scheme::dims() const {
    std::vector<std::size_t> out;
    out.reserve(subspaces.size());
    for (const auto& v : subspaces) out.push_back(v.dim());
    return out;
}

bool Scheme::uniform_dims() const {
    if (subspaces.empty()) return true;
    const std::size_t d = subspaces.front().dim();
    for (const auto& v : subspaces)
        if (v.dim() != d) return false;
    return true;
}

std::size_t Scheme::dim_per_user() const {
    if (!uniform_dims()) throw input_error("scheme has mixed per-user dimensions");
    return subspaces.empty() ? 0 : subspaces.front().dim();
}

namespace {

void check_compatible(const ChannelInstance& instance, const Scheme& scheme) {
    if (scheme.k != instance.k)
        throw input_error("scheme user count does not match the instance");
    if (scheme.l != instance.l || scheme.t != instance.t)
        throw input_error("scheme (l, t) does not match the instance");
    if (scheme.subspaces.size() != scheme.k)
        throw input_error("scheme must carry one subspace per user");
    for (const auto& v : scheme.subspaces)
        if (v.ambient_dim() != instance.ambient_dim())
            throw input_error("scheme ambient dimension does not match T*L");
}

Rational scheme_eps(const Scheme& scheme) {
    const Rational tl = make_rational(static_cast<long>(scheme.ambient_dim()));
    return 1 - 2 * make_rational(static_cast<long>(scheme.dim_per_user())) / tl;
}

} // namespace

VerifyReport verify_decoding(const ChannelInstance& instance, const Scheme& scheme) {
    check_compatible(instance, scheme);
    const std::size_t ambient = instance.ambient_dim();

    VerifyReport report;
    report.feasible = true;
    std::size_t total_dim = 0;
    for (std::size_t i = 1; i <= scheme.k; ++i) {
        const Subspace signal = apply(instance.at(i, i), scheme.subspaces[i - 1]);
        Subspace interference = Subspace::zero(ambient);
        for (std::size_t j = 1; j <= scheme.k; ++j) {
            if (j == i) continue;
            interference = sum(interference, apply(instance.at(i, j), scheme.subspaces[j - 1]));
        }
        const Subspace overlap = intersect(signal, interference);
        report.per_receiver.push_back(
            ReceiverReport{signal.dim(), interference.dim(), overlap.dim()});
        if (!overlap.is_zero()) report.feasible = false;
        total_dim += scheme.subspaces[i - 1].dim();
    }
    report.dof = make_rational(static_cast<long>(total_dim)) /
                 make_rational(static_cast<long>(ambient));
    if (scheme.uniform_dims()) report.eps = scheme_eps(scheme);
    return report;
}

std::vector<WidthCheck> check_width_requirement(const ChannelInstance& instance,
                                                const Scheme& scheme) {
    check_compatible(instance, scheme);
    if (!scheme.uniform_dims())
        throw input_error("width requirement applies to uniform-dimension schemes");
    if (!verify_decoding(instance, scheme).feasible)
        throw input_error("width requirement applies to feasible schemes");

    const Rational bound =
        2 * scheme_eps(scheme) * make_rational(static_cast<long>(scheme.ambient_dim()));
    std::vector<WidthCheck> checks;
    for (std::size_t i = 2; i <= scheme.k; ++i) {
        for (std::size_t j = 2; j <= scheme.k; ++j) {
            for (std::size_t k = 2; k <= scheme.k; ++k) {
                if (i == j || i == k || j == k) continue;
                const DiagMap tij = derive_t(instance, i, j, k);
                WidthCheck check;
                check.i = i;
                check.j = j;
                check.k = k;
                check.width = alignment_width(scheme.subspaces[i - 1], tij).width;
                check.bound = bound;
                check.pass = Rational(check.width) <= bound;
                checks.push_back(std::move(check));
            }
        }
    }
    return checks;
}

std::vector<SparsityCheck> check_sparsity_requirement(const ChannelInstance& instance,
                                                      const Scheme& scheme) {
    check_compatible(instance, scheme);
    if (!scheme.uniform_dims())
        throw input_error("sparsity requirement applies to uniform-dimension schemes");
    if (!verify_decoding(instance, scheme).feasible)
        throw input_error("sparsity requirement applies to feasible schemes");

    const Rational eps_tl =
        scheme_eps(scheme) * make_rational(static_cast<long>(scheme.ambient_dim()));
    std::vector<SparsityCheck> checks;
    for (std::size_t i = 1; i <= scheme.k; ++i) {
        for (std::size_t n = 1; n <= scheme.dim_per_user(); ++n) {
            const SparsityResult sp = n_sparsity(scheme.subspaces[i - 1], n, scheme.l, scheme.t);
            SparsityCheck check;
            check.user = i;
            check.n = n;
            check.sp = sp.value.value(); // n <= D = dim V_i, so finite
            check.bound = 2 * make_rational(static_cast<long>(n)) - eps_tl;
            check.pass = Rational(static_cast<long>(check.sp)) >= check.bound;
            check.heuristic = sp.heuristic;
            checks.push_back(std::move(check));
        }
    }
    return checks;
}

GridWitnessReport grid_witness(const Subspace& v, const DiagMap& m1, const DiagMap& m2,
                               std::size_t n_target, const Rational& eps, std::size_t l) {
    if (m1.t() != 1 || m2.t() != 1 || v.ambient_dim() != l)
        throw input_error("grid witness is a fast-fading construction (T = 1, ambient L)");
    if (m1.acting_dim() != l || m2.acting_dim() != l)
        throw input_error("map dimensions do not match L");
    if (eps <= 0 || eps >= 1) throw input_error("eps must lie strictly between 0 and 1");

    const std::size_t d = v.dim();
    const Rational lq = make_rational(static_cast<long>(l));
    if (Rational(static_cast<long>(d)) != (1 - eps) * lq / 2)
        throw input_error("dim V must equal (1-eps)*L/2 exactly");
    if (n_target < 1 || n_target > d) throw input_error("target dimension out of 1..dim V");

    const Rational width_bound = 2 * eps * lq;
    if (Rational(alignment_width(v, m1).width) > width_bound ||
        Rational(alignment_width(v, m2).width) > width_bound)
        throw input_error("widths exceed 2*eps*L; hypotheses unmet");

    const SparsityResult sp = n_sparsity(v, n_target, l, 1);
    const std::size_t sp_n = sp.value.value();
    if (sp_n < d + 1)
        throw input_error("sp_N(V) must exceed dim V for the grid exponent to be nonnegative");

    GridWitnessReport report;
    report.dim_v = d;
    report.sp_n = sp_n;
    report.n1 = static_cast<std::size_t>(
        rational_floor((Rational(static_cast<long>(d)) - static_cast<long>(n_target)) /
                       width_bound));
    report.n2 = static_cast<std::size_t>(
        rational_floor((Rational(static_cast<long>(sp_n)) - 1 - static_cast<long>(d)) /
                       width_bound));

    const Subspace pool = contract(v, m1.inverse(), report.n1);
    if (pool.dim() < n_target)
        throw invariant_fault("contraction pool lost more than width-per-step dimensions");
    report.x = max_support_vector(pool);
    report.x_support = support_size(report.x);
    if (report.x_support < sp_n)
        throw invariant_fault("maximal-support vector falls below sp_N(V)");

    // The whole line of the grid through x stays inside V by construction.
    if (!v.contains(extend(Subspace({report.x}, l), m1, report.n1)))
        throw invariant_fault("grid base line escapes V");

    const Subspace grid = grid_span(report.x, {m1, m2}, {report.n1, report.n2});
    report.grid_dim = grid.dim();
    report.inequality_holds = sp_n - 1 >= (report.n1 + 1) * (report.n2 + 1);
    return report;
}

Scheme build_orthogonal_scheme(std::size_t k, std::size_t l, std::size_t t,
                               std::size_t d_per_user) {
    if (k < 1 || l < 1 || t < 1) throw input_error("k, l, t must be positive");
    const std::size_t ambient = l * t;
    if (k * d_per_user > ambient)
        throw input_error("k*d = " + std::to_string(k * d_per_user) + " exceeds T*L = " +
                          std::to_string(ambient));
    Scheme scheme;
    scheme.k = k;
    scheme.l = l;
    scheme.t = t;
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<std::size_t> coords;
        coords.reserve(d_per_user);
        for (std::size_t j = 0; j < d_per_user; ++j) coords.push_back(i * d_per_user + j + 1);
        scheme.subspaces.push_back(Subspace::coordinate(coords, ambient));
    }
    return scheme;
}

namespace {

DiagMap pattern_factor(const ChannelInstance& instance, const nlohmann::json& factor) {
    if (factor.is_string() && factor.get<std::string>() == "identity")
        return DiagMap::identity(instance.l, instance.t);
    if (!factor.is_object() || factor.size() != 1)
        throw input_error("pattern factor must be identity or one of h/hinv/t/tinv");
    const auto& [key, value] = *factor.items().begin();
    if (!value.is_array()) throw input_error("pattern factor indices must be an array");
    const auto idx = value.get<std::vector<std::size_t>>();
    if (key == "h" || key == "hinv") {
        if (idx.size() != 2) throw input_error("h factors take [receiver, transmitter]");
        const DiagMap& m = instance.at(idx[0], idx[1]);
        return key == "h" ? m : m.inverse();
    }
    if (key == "t" || key == "tinv") {
        if (idx.size() != 3) throw input_error("t factors take [i, j, k]");
        const DiagMap m = derive_t(instance, idx[0], idx[1], idx[2]);
        return key == "t" ? m : m.inverse();
    }
    throw input_error("unknown pattern factor '" + key + "'");
}

DiagMap pattern_product(const ChannelInstance& instance, const nlohmann::json& factors) {
    if (!factors.is_array() || factors.empty())
        throw input_error("pattern map must be a nonempty factor array");
    DiagMap acc = pattern_factor(instance, factors[0]);
    for (std::size_t i = 1; i < factors.size(); ++i)
        acc = acc * pattern_factor(instance, factors[i]);
    return acc;
}

RowVector pattern_vector(const ChannelInstance& instance, const nlohmann::json& user) {
    const std::size_t ambient = instance.ambient_dim();
    RowVector seed(ambient, Rational(1));
    if (user.contains("vector")) {
        const auto& vec = user.at("vector");
        if (vec.is_string()) {
            if (vec.get<std::string>() != "ones")
                throw input_error("vector must be \"ones\" or an array of rationals");
        } else if (vec.is_array()) {
            if (vec.size() != ambient)
                throw input_error("seed vector length does not match T*L");
            for (std::size_t j = 0; j < ambient; ++j)
                seed[j] = rational_from_string(vec[j].get<std::string>());
        } else {
            throw input_error("vector must be \"ones\" or an array of rationals");
        }
    }
    if (user.contains("vector_maps"))
        seed = pattern_product(instance, user.at("vector_maps")).apply_vector(seed);
    return seed;
}

} // namespace

Scheme build_chain_scheme(const ChannelInstance& instance, const nlohmann::json& pattern) {
    if (!pattern.is_object() || !pattern.contains("users") || !pattern.at("users").is_array())
        throw input_error("pattern must be an object with a 'users' array");
    const auto& users = pattern.at("users");
    if (users.size() != instance.k)
        throw input_error("pattern has " + std::to_string(users.size()) + " users, instance has " +
                          std::to_string(instance.k));

    Scheme scheme;
    scheme.k = instance.k;
    scheme.l = instance.l;
    scheme.t = instance.t;
    const std::size_t ambient = instance.ambient_dim();

    for (const auto& user : users) {
        if (!user.is_object()) throw input_error("each pattern user must be an object");
        if (user.contains("coords")) {
            scheme.subspaces.push_back(
                Subspace::coordinate(user.at("coords").get<std::vector<std::size_t>>(), ambient));
            continue;
        }
        const RowVector seed = pattern_vector(instance, user);
        std::vector<DiagMap> maps;
        std::vector<std::size_t> ns;
        if (user.contains("maps") != user.contains("ns"))
            throw input_error("pattern user needs matching 'maps' and 'ns'");
        if (user.contains("maps")) {
            for (const auto& factors : user.at("maps"))
                maps.push_back(pattern_product(instance, factors));
            ns = user.at("ns").get<std::vector<std::size_t>>();
            if (ns.size() != maps.size())
                throw input_error("'ns' must list one exponent range per map");
        }
        scheme.subspaces.push_back(maps.empty() ? Subspace({seed}, ambient)
                                                : grid_span(seed, maps, ns));
    }
    return scheme;
}

std::optional<Scheme> random_search(const ChannelInstance& instance, std::size_t d,
                                    std::size_t restarts, std::uint64_t seed,
                                    SearchStats* stats) {
    if (d < 1) throw input_error("search dimension must be at least 1");
    if (stats) {
        stats->trials = 0;
        stats->receiver_failures.assign(instance.k, 0);
    }
    if (d > instance.ambient_dim()) return std::nullopt;

    for (std::size_t restart = 0; restart < restarts; ++restart) {
        std::mt19937_64 rng(substream_seed(seed, restart));
        Scheme scheme;
        scheme.k = instance.k;
        scheme.l = instance.l;
        scheme.t = instance.t;
        for (std::size_t i = 0; i < instance.k; ++i)
            scheme.subspaces.push_back(random_subspace(rng, instance.ambient_dim(), d, 99));
        const VerifyReport report = verify_decoding(instance, scheme);
        if (stats) {
            stats->trials += 1;
            if (!report.feasible) {
                for (std::size_t i = 0; i < report.per_receiver.size(); ++i) {
                    if (report.per_receiver[i].overlap_dim > 0) {
                        stats->receiver_failures[i] += 1;
                        break;
                    }
                }
            }
        }
        if (report.feasible) return scheme;
    }
    return std::nullopt;
}

} // namespace subalign
