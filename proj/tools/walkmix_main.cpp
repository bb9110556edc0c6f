#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "walkmix/chain.hpp"
#include "walkmix/chain_io.hpp"
#include "walkmix/constructions.hpp"
#include "walkmix/mixing.hpp"
#include "walkmix/spectral.hpp"
#include "walkmix/walk.hpp"

namespace {

using walkmix::format_full;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;

long default_empirical_horizon() {
  if (const char* env = std::getenv("WALKMIX_DEFAULT_T")) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value >= 1) {
      return value;
    }
    throw walkmix::ValidationError("WALKMIX_DEFAULT_T must be a positive integer, got \"" +
                                   std::string(env) + "\"");
  }
  return walkmix::kDefaultEmpiricalT;
}

std::string row_text(const Eigen::VectorXd& v) {
  std::ostringstream out;
  for (int i = 0; i < v.size(); ++i) {
    if (i) out << ' ';
    out << format_full(v(i));
  }
  return out.str();
}

void print_matrix(std::ostream& out, const Eigen::MatrixXd& m) {
  for (int x = 0; x < m.rows(); ++x) {
    out << row_text(m.row(x)) << '\n';
  }
}

std::string sigma_text(const std::vector<int>& sigma) {
  std::ostringstream out;
  out << '[';
  for (size_t i = 0; i < sigma.size(); ++i) {
    if (i) out << ' ';
    out << sigma[i];
  }
  out << ']';
  return out.str();
}

void print_classification(std::ostream& out, const walkmix::ChainClassification& cls) {
  out << "ergodic: " << (cls.ergodic ? "true" : "false") << '\n';
  out << "reversible: " << (cls.reversible ? "true" : "false") << '\n';
  out << "symmetric: " << (cls.symmetric ? "true" : "false") << '\n';
  if (cls.stationary) {
    out << "stationary: " << row_text(*cls.stationary) << '\n';
  }
}

int cmd_analyze(const std::string& path, bool normalize_rows, double group_tol) {
  const walkmix::MarkovChain chain =
      walkmix::read_chain_file(path, {.normalize_rows = normalize_rows});
  const walkmix::ChainClassification cls = walkmix::classify(chain);
  const walkmix::SpectralDecomposition decomp =
      walkmix::decompose_discriminant(walkmix::discriminant(chain), group_tol);

  std::cout << "walkmix analyze\n";
  std::cout << "n: " << chain.size() << '\n';
  if (!chain.labels().empty()) {
    std::cout << "labels:";
    for (const std::string& label : chain.labels()) std::cout << ' ' << label;
    std::cout << '\n';
  }
  print_classification(std::cout, cls);
  std::cout << "discriminant spectrum:\n";
  for (int r = 0; r < decomp.groups(); ++r) {
    std::cout << "  eigenvalue " << format_full(decomp.eigenvalues(r)) << " multiplicity "
              << decomp.multiplicities[r] << '\n';
  }
  if (decomp.grouping_ambiguous) {
    std::cout << "warning: eigenvalue grouping is ambiguous near the tolerance\n";
  }
  std::cout << "uniform mixing criterion: "
            << (walkmix::uniform_mixing_criterion(decomp) ? "PASS" : "FAIL") << '\n';
  return kExitOk;
}

walkmix::MixingMatrix compute_mixing(const walkmix::MarkovChain& chain,
                                     const std::string& kind, const std::string& method,
                                     long horizon, long steps) {
  if (kind == "continuous") {
    if (method == "closed") {
      return walkmix::continuous_mixing_closed(
          walkmix::decompose_discriminant(walkmix::discriminant(chain)));
    }
    if (method == "integral") {
      return walkmix::continuous_mixing_numerical(walkmix::discriminant(chain),
                                                  static_cast<double>(horizon), steps);
    }
    throw walkmix::ValidationError("kind continuous supports methods closed and integral");
  }
  if (kind != "discrete") {
    throw walkmix::ValidationError("kind must be discrete or continuous");
  }
  if (method == "closed") {
    return walkmix::mixing_closed(chain,
                                  walkmix::decompose_discriminant(walkmix::discriminant(chain)));
  }
  if (method == "idempotents") {
    const walkmix::SzegedyWalk walk(chain);
    const walkmix::ChainClassification cls = walkmix::classify(chain);
    const walkmix::WalkIdempotents idem =
        cls.ergodic && cls.reversible
            ? walkmix::walk_idempotents(
                  walk, walkmix::decompose_discriminant(walkmix::discriminant(chain)))
            : walkmix::walk_idempotents_direct(walk);
    return walkmix::mixing_from_walk_idempotents(walk, idem);
  }
  if (method == "empirical") {
    return walkmix::mixing_empirical(walkmix::SzegedyWalk(chain), horizon);
  }
  throw walkmix::ValidationError(
      "kind discrete supports methods closed, idempotents and empirical");
}

std::string check_partner(const walkmix::MarkovChain& chain, const std::string& kind,
                          const std::string& method) {
  if (kind == "continuous") {
    return method == "closed" ? "integral" : "closed";
  }
  if (method == "closed") {
    return "idempotents";
  }
  const walkmix::ChainClassification cls = walkmix::classify(chain);
  if (cls.ergodic && cls.reversible) {
    return "closed";
  }
  return method == "empirical" ? "idempotents" : "empirical";
}

int cmd_mix(const std::string& path, bool normalize_rows, const std::string& kind,
            const std::string& method, std::optional<long> horizon_flag, long steps,
            std::optional<double> tol, bool check, const std::string& format) {
  const walkmix::MarkovChain chain =
      walkmix::read_chain_file(path, {.normalize_rows = normalize_rows});
  long horizon = horizon_flag.value_or(
      kind == "continuous" ? 5000 : default_empirical_horizon());
  const walkmix::MixingMatrix mix = compute_mixing(chain, kind, method, horizon, steps);

  if (format == "matrix") {
    print_matrix(std::cout, mix.m);
    return kExitOk;
  }
  std::cout << "walkmix mix\n";
  std::cout << "n: " << chain.size() << '\n';
  std::cout << "kind: " << kind << '\n';
  std::cout << "method: " << walkmix::method_label(mix) << '\n';
  std::cout << "matrix:\n";
  print_matrix(std::cout, mix.m);
  double column_residual = 0.0;
  for (int y = 0; y < mix.size(); ++y) {
    column_residual = std::max(column_residual, std::abs(mix.m.col(y).sum() - 1.0));
  }
  std::cout << "column stochastic residual: " << format_full(column_residual) << '\n';
  const bool uniform = tol ? walkmix::is_uniform_mixing(mix, *tol)
                           : walkmix::is_uniform_mixing(mix);
  std::cout << "uniform mixing: " << (uniform ? "true" : "false") << '\n';

  if (check) {
    const std::string partner = check_partner(chain, kind, method);
    const walkmix::MixingMatrix other = compute_mixing(chain, kind, partner, horizon, steps);
    std::cout << "check method: " << walkmix::method_label(other) << '\n';
    std::cout << "check max discrepancy: "
              << format_full((mix.m - other.m).cwiseAbs().maxCoeff()) << '\n';
  }
  return kExitOk;
}

std::vector<walkmix::Automorphism> load_automorphisms(const walkmix::MarkovChain& chain,
                                                      const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw walkmix::ParseError("cannot open automorphism file: " + path);
  }
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw walkmix::ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_array()) {
    throw walkmix::ParseError("automorphism file must be a JSON array of permutations");
  }
  std::vector<walkmix::Automorphism> out;
  for (const auto& entry : doc) {
    if (!entry.is_array()) {
      throw walkmix::ParseError("each permutation must be a JSON array of integers");
    }
    std::vector<int> sigma;
    for (const auto& v : entry) {
      if (!v.is_number_integer()) {
        throw walkmix::ParseError("permutation entries must be integers");
      }
      sigma.push_back(v.get<int>());
    }
    out.push_back(walkmix::check_automorphism(chain, sigma));
  }
  return out;
}

int cmd_verify(const std::string& path, bool normalize_rows, std::optional<long> horizon_flag,
               const std::string& automorphism_path) {
  const walkmix::MarkovChain chain =
      walkmix::read_chain_file(path, {.normalize_rows = normalize_rows});
  const walkmix::ChainClassification cls = walkmix::classify(chain);
  const long horizon = horizon_flag.value_or(default_empirical_horizon());

  std::cout << "walkmix verify\n";
  std::cout << "n: " << chain.size() << '\n';
  print_classification(std::cout, cls);

  bool ok = true;
  const walkmix::Discriminant disc = walkmix::discriminant(chain);
  const walkmix::SpectralDecomposition decomp = walkmix::decompose_discriminant(disc);
  const walkmix::MixingMatrix continuous = walkmix::continuous_mixing_closed(decomp);
  const walkmix::SzegedyWalk walk(chain);
  const bool closed_applicable = cls.ergodic && cls.reversible;

  walkmix::MixingMatrix discrete =
      closed_applicable
          ? walkmix::mixing_closed(chain, decomp)
          : walkmix::mixing_from_walk_idempotents(walk, walkmix::walk_idempotents_direct(walk));
  std::cout << "discrete method: " << walkmix::method_label(discrete) << '\n';
  if (!closed_applicable) {
    std::cout << "note: closed form skipped (chain is not ergodic and reversible); "
                 "using direct walk idempotents\n";
  }

  if (closed_applicable) {
    const walkmix::MixingMatrix via_idem = walkmix::mixing_from_walk_idempotents(
        walk, walkmix::walk_idempotents(walk, decomp));
    const double gap = (discrete.m - via_idem.m).cwiseAbs().maxCoeff();
    const bool pass = gap <= 1e-7;
    ok = ok && pass;
    std::cout << "check closed vs idempotents: " << (pass ? "PASS" : "FAIL")
              << " (max discrepancy " << format_full(gap) << ")\n";
  }
  {
    const walkmix::MixingMatrix empirical = walkmix::mixing_empirical(walk, horizon);
    const double gap = (discrete.m - empirical.m).cwiseAbs().maxCoeff();
    const bool pass = gap <= 5e-3;
    ok = ok && pass;
    std::cout << "check empirical T=" << horizon << ": " << (pass ? "PASS" : "FAIL")
              << " (max discrepancy " << format_full(gap) << ")\n";
    double empirical_columns = 0.0;
    for (int y = 0; y < empirical.size(); ++y) {
      empirical_columns =
          std::max(empirical_columns, std::abs(empirical.m.col(y).sum() - 1.0));
    }
    const bool columns_pass = empirical_columns <= 1e-8;
    ok = ok && columns_pass;
    std::cout << "check empirical column sums: " << (columns_pass ? "PASS" : "FAIL")
              << " (residual " << format_full(empirical_columns) << ")\n";
  }

  std::vector<walkmix::Automorphism> automorphisms;
  if (!automorphism_path.empty()) {
    automorphisms = load_automorphisms(chain, automorphism_path);
  } else if (chain.size() <= walkmix::kDefaultAutomorphismBudget) {
    automorphisms = walkmix::find_automorphisms(chain);
  } else {
    automorphisms.push_back(walkmix::check_automorphism(chain, [&] {
      std::vector<int> identity(chain.size());
      for (int i = 0; i < chain.size(); ++i) identity[i] = i;
      return identity;
    }()));
    std::cout << "note: n exceeds the exhaustive search budget; checking identity only\n";
  }

  const walkmix::PropertyReport report =
      walkmix::verify_properties(chain, discrete, continuous, automorphisms);
  std::cout << "trace discrete: " << format_full(report.trace_discrete) << '\n';
  std::cout << "trace continuous: " << format_full(report.trace_continuous) << '\n';
  std::cout << "check trace inequality: " << (report.trace_inequality_ok ? "PASS" : "FAIL")
            << '\n';
  ok = ok && report.trace_inequality_ok;
  if (report.symmetric_ok.has_value()) {
    std::cout << "check symmetry: " << (*report.symmetric_ok ? "PASS" : "FAIL") << '\n';
    ok = ok && *report.symmetric_ok;
  } else {
    std::cout << "check symmetry: SKIP (chain not symmetric)\n";
  }
  const bool columns_pass = report.column_stochastic_residual <= 1e-8;
  std::cout << "check column sums: " << (columns_pass ? "PASS" : "FAIL") << " (residual "
            << format_full(report.column_stochastic_residual) << ")\n";
  ok = ok && columns_pass;
  for (const auto& [sigma, residual] : report.automorphism_residuals) {
    const bool pass = residual <= 1e-8;
    ok = ok && pass;
    std::cout << "check automorphism " << sigma_text(sigma) << ": " << (pass ? "PASS" : "FAIL")
              << " (residual " << format_full(residual) << ")\n";
  }
  std::cout << "uniform mixing criterion: "
            << (walkmix::uniform_mixing_criterion(decomp) ? "PASS" : "FAIL") << '\n';
  std::cout << "uniform discrete: "
            << (walkmix::is_uniform_mixing(discrete) ? "true" : "false") << '\n';
  std::cout << "uniform continuous: "
            << (walkmix::is_uniform_mixing(continuous) ? "true" : "false") << '\n';
  std::cout << "result: " << (ok ? "PASS" : "FAIL") << '\n';
  return ok ? kExitOk : kExitUsage;
}

int cmd_construct(std::optional<double> two_state, const std::string& primes_csv, int sign,
                  const std::vector<std::string>& tensor_paths, bool normalize_rows) {
  const int modes = (two_state.has_value() ? 1 : 0) + (primes_csv.empty() ? 0 : 1) +
                    (tensor_paths.empty() ? 0 : 1);
  if (modes != 1) {
    throw walkmix::ValidationError(
        "construct requires exactly one of --two-state, --primes, --tensor");
  }
  if (two_state) {
    std::cout << walkmix::chain_to_text(walkmix::two_state_chain(*two_state));
    return kExitOk;
  }
  if (!primes_csv.empty()) {
    std::vector<long> primes;
    std::stringstream ss(primes_csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        size_t used = 0;
        primes.push_back(std::stol(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw walkmix::ValidationError("--primes expects a comma-separated integer list");
      }
    }
    std::cout << walkmix::chain_to_text(walkmix::prime_family_chain(primes, sign));
    return kExitOk;
  }
  std::vector<walkmix::MarkovChain> factors;
  factors.reserve(tensor_paths.size());
  for (const std::string& factor_path : tensor_paths) {
    factors.push_back(
        walkmix::read_chain_file(factor_path, {.normalize_rows = normalize_rows}));
  }
  std::cout << walkmix::chain_to_text(walkmix::tensor_product(factors));
  return kExitOk;
}

int cmd_walk(const std::string& path, bool normalize_rows, int start, long t,
             const std::string& format) {
  const walkmix::MarkovChain chain =
      walkmix::read_chain_file(path, {.normalize_rows = normalize_rows});
  if (start < 0 || start >= chain.size()) {
    throw walkmix::ValidationError("--start must name a vertex in {0.." +
                                   std::to_string(chain.size() - 1) + "}");
  }
  const walkmix::SzegedyWalk walk(chain);
  const Eigen::VectorXcd state =
      walkmix::evolve(walk, walk.state_embedding().col(start).cast<std::complex<double>>(), t);
  const Eigen::VectorXd arcs = walkmix::arc_distribution(state);
  const Eigen::VectorXd marginal = walkmix::vertex_marginal(arcs);

  if (format == "matrix") {
    std::cout << row_text(marginal) << '\n';
    return kExitOk;
  }
  std::cout << "walkmix walk\n";
  std::cout << "n: " << chain.size() << '\n';
  std::cout << "start: " << start << '\n';
  std::cout << "t: " << t << '\n';
  std::cout << "arc distribution:\n";
  const int n = chain.size();
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      std::cout << "  arc (" << x << "," << y
                << "): " << format_full(arcs(walkmix::arc_index(x, y, n))) << '\n';
    }
  }
  std::cout << "vertex marginal: " << row_text(marginal) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Szegedy quantum walk mixing toolkit"};
  app.require_subcommand(1);

  std::string path;
  bool normalize_rows = false;
  double group_tol = walkmix::kDefaultGroupTol;

  auto* analyze = app.add_subcommand("analyze", "classify a chain and report its spectrum");
  analyze->add_option("file", path, "chain file (JSON)")->required();
  analyze->add_flag("--normalize-rows", normalize_rows,
                    "rescale rows whose sum is off by at most 1e-6");
  analyze->add_option("--group-tol", group_tol, "eigenvalue grouping tolerance");

  std::string kind = "discrete";
  std::string method = "closed";
  std::optional<long> horizon;
  long steps = 50000;
  std::optional<double> tol;
  bool check = false;
  std::string format = "text";

  auto* mix = app.add_subcommand("mix", "compute an average mixing matrix");
  mix->add_option("file", path, "chain file (JSON)")->required();
  mix->add_option("--kind", kind, "discrete or continuous")
      ->check(CLI::IsMember({"discrete", "continuous"}));
  mix->add_option("--method", method, "closed, idempotents, empirical or integral")
      ->check(CLI::IsMember({"closed", "idempotents", "empirical", "integral"}));
  mix->add_option("--T", horizon, "time horizon for empirical/integral methods");
  mix->add_option("--steps", steps, "midpoint panels for the integral method");
  mix->add_option("--tol", tol, "uniform-mixing tolerance override");
  mix->add_flag("--check", check, "cross-check against a second method");
  mix->add_option("--format", format, "text or matrix")
      ->check(CLI::IsMember({"text", "matrix"}));
  mix->add_flag("--normalize-rows", normalize_rows,
                "rescale rows whose sum is off by at most 1e-6");

  std::string automorphism_path;
  auto* verify = app.add_subcommand("verify", "run the full property suite");
  verify->add_option("file", path, "chain file (JSON)")->required();
  verify->add_option("--T", horizon, "empirical time horizon");
  verify->add_option("--automorphisms", automorphism_path,
                     "JSON file with permutations to check");
  verify->add_flag("--normalize-rows", normalize_rows,
                   "rescale rows whose sum is off by at most 1e-6");

  std::optional<double> two_state;
  std::string primes_csv;
  int sign = +1;
  std::vector<std::string> tensor_paths;
  auto* construct = app.add_subcommand("construct", "emit a chain file to stdout");
  construct->add_option("--two-state", two_state, "two-state chain with staying probability p");
  construct->add_option("--primes", primes_csv, "comma-separated distinct odd primes");
  construct->add_option("--sign", sign, "+1 or -1 variant of the prime family")
      ->check(CLI::IsMember({1, -1}));
  construct->add_option("--tensor", tensor_paths, "chain files to tensor together");
  construct->add_flag("--normalize-rows", normalize_rows,
                      "rescale rows whose sum is off by at most 1e-6");

  int start = 0;
  long t = 0;
  auto* walk_cmd = app.add_subcommand("walk", "evolve the walk from a vertex start state");
  walk_cmd->add_option("file", path, "chain file (JSON)")->required();
  walk_cmd->add_option("--start", start, "start vertex y (state S e_y)")->required();
  walk_cmd->add_option("--t", t, "number of walk steps");
  walk_cmd->add_option("--format", format, "text or matrix")
      ->check(CLI::IsMember({"text", "matrix"}));
  walk_cmd->add_flag("--normalize-rows", normalize_rows,
                     "rescale rows whose sum is off by at most 1e-6");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*analyze) return cmd_analyze(path, normalize_rows, group_tol);
    if (*mix) return cmd_mix(path, normalize_rows, kind, method, horizon, steps, tol, check,
                             format);
    if (*verify) return cmd_verify(path, normalize_rows, horizon, automorphism_path);
    if (*construct)
      return cmd_construct(two_state, primes_csv, sign, tensor_paths, normalize_rows);
    if (*walk_cmd) return cmd_walk(path, normalize_rows, start, t, format);
  } catch (const walkmix::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
