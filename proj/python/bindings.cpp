#include "euclid/characteristic.hpp"
#include "euclid/classifier.hpp"
#include "euclid/definability.hpp"
#include "euclid/errors.hpp"
#include "euclid/interpretations.hpp"
#include "euclid/morphisms.hpp"
#include "euclid/reductions.hpp"
#include "euclid/semantics.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace euclid;

namespace {

std::vector<std::string> sorted(const WorldSet& s) { return {s.begin(), s.end()}; }

Flavor flavor_of(const std::string& name) {
    if (name == "K2") return Flavor::K2;
    if (name == "L2") return Flavor::L2;
    throw py::value_error("flavor must be 'K2' or 'L2'");
}

py::object to_int(const mpz_class& x) {
    return py::module_::import("builtins").attr("int")(x.get_str(16), 16);
}

py::dict verdict_dict(const Verdict& v) {
    py::dict d;
    d["outcome"] = outcome_name(v.outcome);
    d["explored_bound"] = v.explored_bound;
    d["full_bound"] = v.full_bound == 0 ? py::object(py::none()) : to_int(v.full_bound);
    if (v.certificate) {
        py::dict c;
        const Certificate& cert = *v.certificate;
        c["frame"] = cert.frame ? py::cast(*cert.frame) : py::object(py::none());
        if (cert.flowers) {
            auto [a, b] = *cert.flowers;
            c["flowers"] = py::make_tuple(py::make_tuple(a.m, a.n), py::make_tuple(b.m, b.n));
        } else {
            c["flowers"] = py::none();
        }
        c["formula"] = cert.formula ? py::cast(to_string(*cert.formula)) : py::object(py::none());
        c["reason"] = cert.reason;
        d["certificate"] = c;
    } else {
        d["certificate"] = py::none();
    }
    return d;
}

}  // namespace

PYBIND11_MODULE(euclid, m) {
    m.doc() = "Euclidean modal logic: frames, flowers, games, reductions and definability.";

    auto base = py::register_exception<Error>(m, "EuclidError", PyExc_RuntimeError);
    py::register_exception<SyntaxError>(m, "SyntaxError", base.ptr());
    py::register_exception<VariableClash>(m, "VariableClash", base.ptr());
    py::register_exception<NotEuclidean>(m, "NotEuclidean", base.ptr());
    py::register_exception<InvalidIndex>(m, "InvalidIndex", base.ptr());
    py::register_exception<WorldNotFound>(m, "WorldNotFound", base.ptr());
    py::register_exception<Overlap>(m, "Overlap", base.ptr());
    py::register_exception<MalformedInput>(m, "MalformedInput", base.ptr());
    py::register_exception<UncoveredVariable>(m, "UncoveredVariable", base.ptr());
    py::register_exception<ResourceLimit>(m, "ResourceLimit", base.ptr());
    py::register_exception<PreconditionViolated>(m, "PreconditionViolated", base.ptr());
    py::register_exception<InvalidBudget>(m, "InvalidBudget", base.ptr());
    py::register_exception<ArityMismatch>(m, "ArityMismatch", base.ptr());
    py::register_exception<NotACongruence>(m, "NotACongruence", base.ptr());

    py::class_<Frame>(m, "Frame")
        .def(py::init<std::vector<World>, const std::vector<std::pair<World, World>>&>(), py::arg("worlds"),
             py::arg("edges"))
        .def_property_readonly("worlds", &Frame::worlds)
        .def_property_readonly("edges", &Frame::edges)
        .def("__len__", &Frame::size)
        .def("has_edge", py::overload_cast<const World&, const World&>(&Frame::edge, py::const_))
        .def("__eq__", [](const Frame& a, const Frame& b) { return a == b; })
        .def("__str__", &format_frame)
        .def("__repr__", [](const Frame& f) {
            return "<Frame " + std::to_string(f.size()) + " worlds, " + std::to_string(f.edge_count()) + " edges>";
        });

    py::class_<Galaxy>(m, "Galaxy")
        .def_property_readonly("upper", [](const Galaxy& g) { return sorted(g.upper); })
        .def_property_readonly("lower", [](const Galaxy& g) { return sorted(g.lower); })
        .def_property_readonly("rho",
                               [](const Galaxy& g) {
                                   std::map<std::string, std::vector<std::string>> out;
                                   for (const auto& [s, img] : g.rho) out[s] = sorted(img);
                                   return out;
                               })
        .def("to_frame", &galaxy_to_frame)
        .def("__str__", &format_galaxy);

    m.def("parse_frame", &parse_frame, py::arg("text"));
    m.def("format_frame", &format_frame);
    m.def("parse_modal", [](const std::string& t) { return to_string(parse_modal(t)); }, py::arg("text"),
          "Normal form of a modal formula.");
    m.def("parse_fo", [](const std::string& t) { return to_string(parse_fo(t)); }, py::arg("text"),
          "Normal form of a first-order formula.");

    m.def("is_euclidean", &is_euclidean);
    m.def("partition", [](const Frame& f) {
        Partition p = partition(f);
        py::dict d;
        d["dust"] = sorted(p.dust);
        d["root"] = sorted(p.root);
        d["kernel"] = sorted(p.kernel);
        return d;
    });
    m.def("decompose", &frame_to_galaxies);
    m.def("flower", [](int mm, int n) { return flower({mm, n}); }, py::arg("m"), py::arg("n"));
    m.def("is_simple_flower", [](int mm, int n) { return is_simple(flower_galaxy({mm, n})); }, py::arg("m"),
          py::arg("n"));
    m.def("generated_subframe", &generated_subframe);
    m.def("canonical_code", &canonical_code);
    m.def("enumerate_euclidean_frames", &enumerate_euclidean_frames, py::arg("max_worlds"));

    m.def("valid_modal", [](const Frame& f, const std::string& phi) { return valid_modal(f, parse_modal(phi)).valid; });
    m.def("valid_fo", [](const Frame& f, const std::string& a) { return valid_fo(f, parse_fo(a)); });
    m.def("find_surjective_bm",
          [](const Frame& s, const Frame& t) -> std::optional<std::map<std::string, std::string>> {
              auto r = find_surjective_bm(s, t);
              if (!r) return std::nullopt;
              return std::map<std::string, std::string>(r->begin(), r->end());
          });
    m.def("are_isomorphic", [](const Frame& a, const Frame& b) { return are_isomorphic(a, b).has_value(); });
    m.def("q_equivalent", &q_equivalent, py::arg("a"), py::arg("b"), py::arg("q"));

    m.def("jankov_fine", [](int mm, int n) { return to_string(jankov_fine({mm, n})); }, py::arg("m"), py::arg("n"));

    m.def(
        "reduce_frame",
        [](const Frame& f, std::size_t q, std::size_t k) {
            auto r = reduce_frame(f, q, k);
            return py::make_tuple(r.frame, format_certificate(r.certificate));
        },
        py::arg("frame"), py::arg("q") = 3, py::arg("k") = 4);
    m.def("bound", [](std::size_t q, std::size_t k) { return to_int(bound(q, k)); }, py::arg("q"), py::arg("k"));
    m.def("bound_digits", [](std::size_t q, std::size_t k) { return decimal_digits(bound(q, k)); }, py::arg("q"),
          py::arg("k"));

    m.def("classify", [](const std::string& axiom) {
        ClassifierReport r = classify(parse_modal(axiom));
        py::dict d;
        d["l"] = r.l;
        d["decidable"] = r.decidable;
        d["k"] = r.k ? py::cast(*r.k) : py::object(py::none());
        py::list probes;
        for (const auto& p : r.probes) probes.append(py::make_tuple(p.index.m, p.index.n, p.validates));
        d["probes"] = probes;
        return d;
    });
    m.def("compute_k", [](const std::string& axiom) { return compute_k(parse_modal(axiom)); });

    m.def(
        "decide_definability",
        [](const std::string& a, const std::string& phi, std::size_t budget) {
            return verdict_dict(decide_definability(parse_fo(a), parse_modal(phi), budget));
        },
        py::arg("sentence"), py::arg("axiom"), py::arg("budget") = 4);
    m.def(
        "synth_defining_formula",
        [](const std::string& a, const std::string& phi, std::size_t budget) {
            return to_string(synth_defining_formula(parse_fo(a), parse_modal(phi), budget));
        },
        py::arg("sentence"), py::arg("axiom"), py::arg("budget") = 4);
    m.def(
        "decide_correspondence",
        [](const std::string& psi, const std::string& a, const std::string& phi, std::size_t budget) {
            return verdict_dict(decide_correspondence(parse_modal(psi), parse_fo(a), parse_modal(phi), budget));
        },
        py::arg("formula"), py::arg("sentence"), py::arg("axiom"), py::arg("budget") = 4);

    m.def("encode", [](const Frame& f, const std::string& flavor) { return encode(f, flavor_of(flavor)); },
          py::arg("frame"), py::arg("flavor") = "K2");
    m.def(
        "decode",
        [](const Galaxy& g, const std::string& flavor) { return decode(g, interpretation_scheme(flavor_of(flavor))); },
        py::arg("galaxy"), py::arg("flavor") = "K2");
}
