#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "subalign/alignment.hpp"
#include "subalign/bounds.hpp"
#include "subalign/channel.hpp"
#include "subalign/cli.hpp"
#include "subalign/errors.hpp"
#include "subalign/json_io.hpp"
#include "subalign/selftest.hpp"
#include "subalign/sparsity.hpp"
#include "subalign/subspace.hpp"
#include "subalign/sweep.hpp"
#include "subalign/verify.hpp"

#include <sstream>

namespace py = pybind11;
using namespace subalign;

namespace {

// Exact values cross the boundary as int or "p/q" strings; floats are
// rejected so no rounding can sneak in.
Rational to_rational(py::handle h) {
    if (py::isinstance<py::bool_>(h)) throw input_error("rational entries cannot be bools");
    if (py::isinstance<py::int_>(h) || py::isinstance<py::str>(h))
        return rational_from_string(py::str(h).cast<std::string>());
    throw input_error("rational entries must be int or 'p/q' strings");
}

RowVector to_row(py::handle seq) {
    RowVector row;
    for (py::handle item : py::iter(seq)) row.push_back(to_rational(item));
    return row;
}

RowMatrix to_rows(py::handle seq) {
    RowMatrix rows;
    for (py::handle item : py::iter(seq)) rows.push_back(to_row(item));
    return rows;
}

py::list from_row(const RowVector& row) {
    py::list out;
    for (const auto& entry : row) out.append(rational_to_string(entry));
    return out;
}

py::list from_rows(const RowMatrix& rows) {
    py::list out;
    for (const auto& row : rows) out.append(from_row(row));
    return out;
}

py::object json_to_py(const nlohmann::json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

nlohmann::json py_to_json(py::handle obj) {
    const std::string dumped =
        py::module_::import("json").attr("dumps")(obj).cast<std::string>();
    return nlohmann::json::parse(dumped);
}

std::vector<Rational> to_rational_list(py::handle seq) {
    std::vector<Rational> out;
    for (py::handle item : py::iter(seq)) out.push_back(to_rational(item));
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact rational subspace arithmetic for vector-space interference alignment";

    py::register_exception<input_error>(m, "InputError", PyExc_ValueError);
    py::register_exception<capacity_error>(m, "CapacityError", PyExc_RuntimeError);
    py::register_exception<invariant_fault>(m, "InvariantFault", PyExc_AssertionError);

    py::class_<Subspace>(m, "Subspace")
        .def(py::init([](py::handle rows, std::size_t ambient_dim) {
                 return Subspace(to_rows(rows), ambient_dim);
             }),
             py::arg("rows"), py::arg("ambient_dim"),
             "Canonicalize the row span; entries are ints or 'p/q' strings.")
        .def_static("zero", &Subspace::zero, py::arg("ambient_dim"))
        .def_static("full", &Subspace::full, py::arg("ambient_dim"))
        .def_static("coordinate", &Subspace::coordinate, py::arg("indices"),
                    py::arg("ambient_dim"), "Span of unit vectors (1-based indices).")
        .def_property_readonly("ambient_dim", &Subspace::ambient_dim)
        .def_property_readonly("dim", &Subspace::dim)
        .def("basis", [](const Subspace& v) { return from_rows(v.basis()); })
        .def("contains",
             [](const Subspace& v, py::handle x) { return v.contains(to_row(x)); })
        .def("contains_subspace",
             [](const Subspace& v, const Subspace& w) { return v.contains(w); })
        .def("support", &Subspace::support)
        .def(py::self == py::self)
        .def(py::self != py::self)
        .def("__repr__", [](const Subspace& v) {
            std::ostringstream out;
            out << "Subspace(dim=" << v.dim() << ", ambient=" << v.ambient_dim() << ")";
            return out.str();
        });

    m.def("sum", &sum, "Canonical span of the union of two subspaces");
    m.def("intersect", &intersect, "Exact intersection of two subspaces");
    m.def("max_support_vector",
          [](const Subspace& v) { return from_row(max_support_vector(v)); });

    py::class_<DiagMap>(m, "DiagMap")
        .def(py::init([](py::handle entries, std::size_t t) {
                 return DiagMap(to_rational_list(entries), t);
             }),
             py::arg("entries"), py::arg("t") = 1)
        .def_static("identity", &DiagMap::identity, py::arg("l"), py::arg("t") = 1)
        .def_property_readonly("l", &DiagMap::l)
        .def_property_readonly("t", &DiagMap::t)
        .def_property_readonly("acting_dim", &DiagMap::acting_dim)
        .def("entries",
             [](const DiagMap& m_) {
                 py::list out;
                 for (const auto& entry : m_.entries()) out.append(rational_to_string(entry));
                 return out;
             })
        .def("inverse", &DiagMap::inverse)
        .def("pow", &DiagMap::pow, py::arg("e"))
        .def("is_identity", &DiagMap::is_identity)
        .def("apply_vector",
             [](const DiagMap& m_, py::handle x) { return from_row(m_.apply_vector(to_row(x))); })
        .def(py::self * py::self)
        .def(py::self == py::self);

    m.def("apply", py::overload_cast<const DiagMap&, const Subspace&>(&apply),
          "Image of a subspace under an invertible diagonal map");
    m.def("block_lift",
          [](py::handle entries, std::size_t t) { return block_lift(to_rational_list(entries), t); },
          py::arg("entries"), py::arg("t"));

    py::class_<BlockProjection>(m, "BlockProjection")
        .def(py::init<std::size_t, std::size_t, std::size_t>(), py::arg("period"), py::arg("l"),
             py::arg("t"))
        .def("selected_coords", &BlockProjection::selected_coords)
        .def("project", &BlockProjection::project)
        .def("embed", &BlockProjection::embed);

    py::class_<ChannelInstance>(m, "ChannelInstance")
        .def_static("sample", &ChannelInstance::sample, py::arg("k"), py::arg("l"),
                    py::arg("t") = 1, py::arg("bits") = 16, py::arg("seed") = 1)
        .def_readonly("k", &ChannelInstance::k)
        .def_readonly("l", &ChannelInstance::l)
        .def_readonly("t", &ChannelInstance::t)
        .def_readonly("bits", &ChannelInstance::bits)
        .def_readonly("seed", &ChannelInstance::seed)
        .def_property_readonly("ambient_dim", &ChannelInstance::ambient_dim)
        .def("at", &ChannelInstance::at, py::arg("i"), py::arg("j"),
             "Diagonal map from transmitter j to receiver i (1-based)")
        .def("to_dict", [](const ChannelInstance& inst) { return json_to_py(instance_to_json(inst)); })
        .def_static("from_dict",
                    [](py::handle obj) { return instance_from_json(py_to_json(obj)); });

    py::class_<TFamily>(m, "TFamily")
        .def_readonly("user", &TFamily::user)
        .def_readonly("members", &TFamily::members)
        .def_readonly("labels", &TFamily::labels)
        .def("__len__", &TFamily::size);

    m.def("derive_t", &derive_t, py::arg("instance"), py::arg("i"), py::arg("j"), py::arg("k"));
    m.def("t_family", &t_family, py::arg("instance"), py::arg("user") = 2);
    m.def("check_lin_indep",
          [](const std::vector<DiagMap>& maps, const std::vector<ExponentVector>& exponents,
             py::handle v) { return check_lin_indep(maps, exponents, to_row(v)); },
          py::arg("maps"), py::arg("exponents"), py::arg("v"));

    m.def("extend", &extend, py::arg("v"), py::arg("m"), py::arg("n") = 1);
    m.def("contract", &contract, py::arg("v"), py::arg("m"), py::arg("n") = 1);
    m.def("alignment_width", [](const Subspace& v, const DiagMap& m_) {
        const WidthReport report = alignment_width(v, m_);
        return py::dict(py::arg("width") = report.width,
                        py::arg("dim_before") = report.dim_before,
                        py::arg("dim_after_extend") = report.dim_after_extend,
                        py::arg("dim_after_contract") = report.dim_after_contract);
    });
    m.def("second_order", [](const Subspace& v, const DiagMap& m1, const DiagMap& m2) {
        const SecondOrderReport report = second_order(v, m1, m2);
        return py::dict(py::arg("ext2") = report.ext2, py::arg("con2") = report.con2);
    });
    m.def("average_width", [](const Subspace& v, const TFamily& family) {
        return rational_to_string(average_width(v, family));
    });
    m.def("grid_span",
          [](py::handle x, const std::vector<DiagMap>& maps, const std::vector<std::size_t>& ns) {
              return grid_span(to_row(x), maps, ns);
          },
          py::arg("x"), py::arg("maps"), py::arg("ns"));
    m.def("adaptive_walk",
          [](const Subspace& w, const TFamily& family, std::vector<std::size_t> s,
             py::handle thresholds, const std::string& mode) {
              const WalkMode wm =
                  mode == "contraction" ? WalkMode::contraction : WalkMode::extension;
              return json_to_py(
                  walk_result_to_json(adaptive_walk(w, family, std::move(s),
                                                    to_rational_list(thresholds), wm)));
          },
          py::arg("w"), py::arg("family"), py::arg("s"), py::arg("thresholds"),
          py::arg("mode") = "extension");

    m.def("support_dim", &support_dim, py::arg("v"), py::arg("l"), py::arg("t") = 1);
    m.def("n_sparsity",
          [](const Subspace& v, std::size_t n, std::size_t l, std::size_t t) {
              return json_to_py(sparsity_result_to_json(n_sparsity(v, n, l, t)));
          },
          py::arg("v"), py::arg("n"), py::arg("l"), py::arg("t") = 1);

    py::class_<Scheme>(m, "Scheme")
        .def(py::init([](std::size_t k, std::size_t l, std::size_t t,
                         std::vector<Subspace> subspaces) {
                 Scheme scheme;
                 scheme.k = k;
                 scheme.l = l;
                 scheme.t = t;
                 scheme.subspaces = std::move(subspaces);
                 return scheme;
             }),
             py::arg("k"), py::arg("l"), py::arg("t"), py::arg("subspaces"))
        .def_readonly("k", &Scheme::k)
        .def_readonly("l", &Scheme::l)
        .def_readonly("t", &Scheme::t)
        .def_readonly("subspaces", &Scheme::subspaces)
        .def("dims", &Scheme::dims)
        .def("to_dict", [](const Scheme& scheme) { return json_to_py(scheme_to_json(scheme)); })
        .def_static("from_dict", [](py::handle obj) { return scheme_from_json(py_to_json(obj)); });

    m.def("verify_decoding", [](const ChannelInstance& instance, const Scheme& scheme) {
        return json_to_py(verify_report_to_json(verify_decoding(instance, scheme)));
    });
    m.def("check_width_requirement", [](const ChannelInstance& instance, const Scheme& scheme) {
        return json_to_py(width_checks_to_json(check_width_requirement(instance, scheme)));
    });
    m.def("check_sparsity_requirement", [](const ChannelInstance& instance, const Scheme& scheme) {
        return json_to_py(sparsity_checks_to_json(check_sparsity_requirement(instance, scheme)));
    });
    m.def("grid_witness",
          [](const Subspace& v, const DiagMap& m1, const DiagMap& m2, std::size_t n_target,
             py::handle eps, std::size_t l) {
              return json_to_py(
                  grid_witness_to_json(grid_witness(v, m1, m2, n_target, to_rational(eps), l)));
          },
          py::arg("v"), py::arg("m1"), py::arg("m2"), py::arg("n_target"), py::arg("eps"),
          py::arg("l"));
    m.def("eval_bounds",
          [](std::size_t k, std::size_t l, std::size_t t, py::handle eps, py::handle c) {
              std::optional<Rational> eps_value;
              if (!eps.is_none()) eps_value = to_rational(eps);
              return json_to_py(bound_table_to_json(
                  eval_bounds(k, l, t, eps_value, c.is_none() ? Rational(1) : to_rational(c))));
          },
          py::arg("k"), py::arg("l"), py::arg("t") = 1, py::arg("eps") = py::none(),
          py::arg("c") = py::none());

    m.def("build_orthogonal_scheme", &build_orthogonal_scheme, py::arg("k"), py::arg("l"),
          py::arg("t"), py::arg("d_per_user"));
    m.def("build_chain_scheme",
          [](const ChannelInstance& instance, py::handle pattern) {
              return build_chain_scheme(instance, py_to_json(pattern));
          },
          py::arg("instance"), py::arg("pattern"));
    m.def("random_search",
          [](const ChannelInstance& instance, std::size_t d, std::size_t restarts,
             std::uint64_t seed) -> py::object {
              SearchStats stats;
              const auto scheme = random_search(instance, d, restarts, seed, &stats);
              py::dict out;
              out["trials"] = stats.trials;
              out["scheme"] = scheme ? py::cast(*scheme) : py::none().cast<py::object>();
              return out;
          },
          py::arg("instance"), py::arg("d"), py::arg("restarts") = 32, py::arg("seed") = 1);

    m.def("run_sweep", [](py::handle config) {
        return sweep_to_csv(run_sweep(SweepConfig::from_json(py_to_json(config))));
    });
    m.def("run_selftest", [] {
        py::list out;
        for (const auto& result : run_selftest(nullptr)) {
            out.append(py::dict(py::arg("name") = result.name, py::arg("pass") = result.pass,
                                py::arg("detail") = result.detail,
                                py::arg("seconds") = result.seconds));
        }
        return out;
    });
    m.def("run_command", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run_command(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    });

    m.def("ambient_cap", &ambient_cap);
    m.def("set_ambient_cap", &set_ambient_cap, py::arg("cap"));
}
