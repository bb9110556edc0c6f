#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "walkmix/chain.hpp"
#include "walkmix/chain_io.hpp"
#include "walkmix/constructions.hpp"
#include "walkmix/mixing.hpp"
#include "walkmix/spectral.hpp"
#include "walkmix/walk.hpp"

namespace py = pybind11;
using namespace walkmix;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Szegedy quantum walk mixing toolkit";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);

  py::class_<MarkovChain>(m, "MarkovChain")
      .def(py::init<Eigen::MatrixXd, std::vector<std::string>>(), py::arg("transition"),
           py::arg("labels") = std::vector<std::string>{})
      .def_property_readonly("n", &MarkovChain::size)
      .def_property_readonly("transition", &MarkovChain::transition)
      .def_property_readonly("labels", &MarkovChain::labels)
      .def("__repr__", [](const MarkovChain& c) {
        return "MarkovChain(n=" + std::to_string(c.size()) + ")";
      });

  py::class_<ChainClassification>(m, "ChainClassification")
      .def_readonly("ergodic", &ChainClassification::ergodic)
      .def_readonly("reversible", &ChainClassification::reversible)
      .def_readonly("symmetric", &ChainClassification::symmetric)
      .def_readonly("stationary", &ChainClassification::stationary);

  py::class_<Discriminant>(m, "Discriminant")
      .def_readonly("matrix", &Discriminant::matrix);

  py::class_<SpectralDecomposition>(m, "SpectralDecomposition")
      .def_readonly("eigenvalues", &SpectralDecomposition::eigenvalues)
      .def_readonly("idempotents", &SpectralDecomposition::idempotents)
      .def_readonly("multiplicities", &SpectralDecomposition::multiplicities)
      .def_readonly("grouping_ambiguous", &SpectralDecomposition::grouping_ambiguous)
      .def_property_readonly("n", &SpectralDecomposition::size);

  py::class_<SzegedyWalk>(m, "SzegedyWalk")
      .def(py::init<MarkovChain, int>(), py::arg("chain"),
           py::arg("max_states") = SzegedyWalk::kDefaultMaxStates)
      .def_property_readonly("n", &SzegedyWalk::states)
      .def_property_readonly("arcs", &SzegedyWalk::arcs)
      .def_property_readonly("chain", &SzegedyWalk::chain)
      .def_property_readonly("state_embedding", &SzegedyWalk::state_embedding)
      .def_property_readonly("arc_reversal", &SzegedyWalk::arc_reversal)
      .def_property_readonly("transition", &SzegedyWalk::transition);

  py::class_<WalkEigenprojector>(m, "WalkEigenprojector")
      .def_readonly("eigenvalue", &WalkEigenprojector::eigenvalue)
      .def_readonly("projector", &WalkEigenprojector::projector);

  py::class_<WalkIdempotents>(m, "WalkIdempotents")
      .def_readonly("entries", &WalkIdempotents::entries);

  py::enum_<MixingKind>(m, "MixingKind")
      .value("discrete", MixingKind::kDiscrete)
      .value("continuous", MixingKind::kContinuous);

  py::enum_<MixingMethod>(m, "MixingMethod")
      .value("empirical", MixingMethod::kEmpirical)
      .value("walk_idempotents", MixingMethod::kWalkIdempotents)
      .value("closed_form", MixingMethod::kClosedForm)
      .value("idempotent_squares", MixingMethod::kIdempotentSquares)
      .value("time_integral", MixingMethod::kTimeIntegral);

  py::class_<MixingMatrix>(m, "MixingMatrix")
      .def_readonly("matrix", &MixingMatrix::m)
      .def_readonly("kind", &MixingMatrix::kind)
      .def_readonly("method", &MixingMatrix::method)
      .def_readonly("horizon", &MixingMatrix::horizon)
      .def_readonly("steps", &MixingMatrix::steps)
      .def_property_readonly("n", &MixingMatrix::size)
      .def("__repr__", [](const MixingMatrix& mm) {
        return "MixingMatrix(n=" + std::to_string(mm.size()) + ", method=" +
               method_label(mm) + ")";
      });

  py::class_<PropertyReport>(m, "PropertyReport")
      .def_readonly("trace_discrete", &PropertyReport::trace_discrete)
      .def_readonly("trace_continuous", &PropertyReport::trace_continuous)
      .def_readonly("trace_inequality_ok", &PropertyReport::trace_inequality_ok)
      .def_readonly("symmetric_ok", &PropertyReport::symmetric_ok)
      .def_readonly("column_stochastic_residual", &PropertyReport::column_stochastic_residual)
      .def_readonly("automorphism_residuals", &PropertyReport::automorphism_residuals)
      .def("all_ok", &PropertyReport::all_ok, py::arg("automorphism_tol") = 1e-8,
           py::arg("column_tol") = 1e-8);

  py::class_<Automorphism>(m, "Automorphism")
      .def_readonly("sigma", &Automorphism::sigma)
      .def_readonly("matrix", &Automorphism::matrix);

  m.def("load_chain", &load_chain, py::arg("transition"),
        py::arg("labels") = std::vector<std::string>{});
  m.def("classify", &classify, py::arg("chain"));
  m.def("discriminant", &discriminant, py::arg("chain"));
  m.def("verify_similarity", &verify_similarity, py::arg("chain"), py::arg("disc"));

  m.def("decompose", &decompose, py::arg("matrix"), py::arg("group_tol") = kDefaultGroupTol);
  m.def("decompose_discriminant", &decompose_discriminant, py::arg("disc"),
        py::arg("group_tol") = kDefaultGroupTol);
  m.def("reconstruct", &reconstruct, py::arg("decomp"));
  m.def("flat_eigenvector_test", &flat_eigenvector_test, py::arg("decomp"),
        py::arg("tol") = 1e-8);

  m.def("build_walk", &build_walk, py::arg("chain"),
        py::arg("max_states") = SzegedyWalk::kDefaultMaxStates);
  m.def("walk_idempotents", &walk_idempotents, py::arg("walk"), py::arg("disc_decomp"),
        py::arg("pm_one_tol") = kPlusMinusOneTol);
  m.def("walk_idempotents_direct", &walk_idempotents_direct, py::arg("walk"),
        py::arg("group_tol") = kDefaultGroupTol, py::arg("pm_one_tol") = kPlusMinusOneTol);
  m.def("idempotent_completeness_residual", &idempotent_completeness_residual,
        py::arg("walk"), py::arg("idempotents"));
  m.def("evolve", &evolve, py::arg("walk"), py::arg("state"), py::arg("t"));
  m.def("arc_distribution", &arc_distribution, py::arg("state"));
  m.def("vertex_marginal", &vertex_marginal, py::arg("arc_dist"));
  m.def("arc_index", &arc_index, py::arg("x"), py::arg("y"), py::arg("n"));
  m.def("arc_reverse_index", &arc_reverse_index, py::arg("index"), py::arg("n"));

  m.def("mixing_empirical", &mixing_empirical, py::arg("walk"),
        py::arg("T") = kDefaultEmpiricalT);
  m.def("mixing_from_walk_idempotents", &mixing_from_walk_idempotents, py::arg("walk"),
        py::arg("idempotents"));
  m.def("mixing_closed", &mixing_closed, py::arg("chain"), py::arg("disc_decomp"));
  m.def("continuous_mixing_closed", &continuous_mixing_closed, py::arg("disc_decomp"));
  m.def("continuous_mixing_numerical", &continuous_mixing_numerical, py::arg("disc"),
        py::arg("T"), py::arg("steps"));
  m.def("is_uniform_mixing",
        py::overload_cast<const MixingMatrix&, double>(&is_uniform_mixing), py::arg("mixing"),
        py::arg("tol"));
  m.def("is_uniform_mixing", py::overload_cast<const MixingMatrix&>(&is_uniform_mixing),
        py::arg("mixing"));
  m.def("uniform_mixing_criterion", &uniform_mixing_criterion, py::arg("disc_decomp"),
        py::arg("tol") = 1e-8);
  m.def("verify_properties", &verify_properties, py::arg("chain"), py::arg("discrete"),
        py::arg("continuous"), py::arg("automorphisms") = std::vector<Automorphism>{});

  m.def("two_state_chain", &two_state_chain, py::arg("p"));
  m.def("tensor_product", &tensor_product, py::arg("chains"));
  m.def("prime_family_chain", &prime_family_chain, py::arg("primes"), py::arg("sign") = 1);
  m.def("find_automorphisms", &find_automorphisms, py::arg("chain"),
        py::arg("budget") = kDefaultAutomorphismBudget);
  m.def("check_automorphism",
        py::overload_cast<const MarkovChain&, const std::vector<int>&>(&check_automorphism),
        py::arg("chain"), py::arg("sigma"));
  m.def("check_automorphism",
        py::overload_cast<const MarkovChain&, const std::vector<int>&, const SzegedyWalk&>(
            &check_automorphism),
        py::arg("chain"), py::arg("sigma"), py::arg("walk"));

  m.def("parse_chain_text", [](const std::string& text, bool normalize_rows) {
          return parse_chain_text(text, {.normalize_rows = normalize_rows});
        },
        py::arg("text"), py::arg("normalize_rows") = false);
  m.def("read_chain_file", [](const std::string& path, bool normalize_rows) {
          return read_chain_file(path, {.normalize_rows = normalize_rows});
        },
        py::arg("path"), py::arg("normalize_rows") = false);
  m.def("chain_to_text", &chain_to_text, py::arg("chain"));
  m.def("method_label", &method_label, py::arg("mixing"));
}
