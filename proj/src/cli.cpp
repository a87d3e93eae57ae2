#include "orthocat/cli.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "orthocat/orthocat.hpp"

namespace orthocat::cli {
namespace {

using json = nlohmann::ordered_json;
using complexd = complex_t<double>;

constexpr std::uint64_t default_seed = 0x0c2026a5;

complexd parse_complex(const std::string& text) {
  // "re,im" or plain "re".
  static const std::regex form(
      R"(^\s*([+-]?[.0-9][^,\s]*)\s*(?:,\s*([+-]?[.0-9][^,\s]*)\s*)?$)");
  std::smatch m;
  if (std::regex_match(text, m, form)) {
    try {
      std::size_t used = 0;
      const double re = std::stod(m[1].str(), &used);
      if (used != m[1].str().size()) throw std::invalid_argument(text);
      double im = 0;
      if (m[2].matched) {
        const double v = std::stod(m[2].str(), &used);
        if (used != m[2].str().size()) throw std::invalid_argument(text);
        im = v;
      }
      if (std::isfinite(re) && std::isfinite(im)) return {re, im};
    } catch (const std::exception&) {
      // fall through to the error below
    }
  }
  throw CLI::ValidationError("complex", "expected 're,im', got '" + text + "'");
}

std::pair<long, long> parse_k_range(const std::string& text) {
  static const std::regex form(R"(^\s*(-?\d+)(?:\.\.(-?\d+))?\s*$)");
  std::smatch m;
  if (std::regex_match(text, m, form)) {
    const long a = std::stol(m[1].str());
    const long b = m[2].matched ? std::stol(m[2].str()) : a;
    if (a <= b) return {a, b};
  }
  throw CLI::ValidationError("range", "expected 'k' or 'k_min..k_max', got '" +
                                          text + "'");
}

json cjson(complexd z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

double to_radians(double v, bool degrees) {
  return degrees ? v * std::numbers::pi / 180.0 : v;
}

json lattice_json(const quantization_class& cls) {
  return json{{"kind", lattice_name(cls.kind)}, {"k", cls.k}};
}

// |<bra|ket>| between two cat vectors in the truncated number basis, with
// the rigorous truncation error bar.  `truncation` <= 0 picks the
// recommended depth for the amplitudes involved.
struct oracle_report {
  double abs_inner;
  double error_bound;
  int truncation;
};

oracle_report oracle_cat(const cat_vector<double>& bra,
                         const cat_vector<double>& ket, int truncation) {
  const double amp = std::max(std::abs(bra.alpha), std::abs(ket.alpha));
  const int n = truncation > 0 ? truncation : recommended_truncation(amp);
  const auto fb = fock_expand_cat(bra, n);
  const auto fk = fock_expand_cat(ket, n);
  const auto r = fock_inner_product(fb, fk);
  return {std::abs(r.value), r.error_bound, n};
}

oracle_report oracle_superposition(const two_term_superposition<double>& bra,
                                   const two_term_superposition<double>& ket,
                                   int truncation) {
  const double amp =
      std::max({std::abs(bra.gamma1), std::abs(bra.gamma2),
                std::abs(ket.gamma1), std::abs(ket.gamma2)});
  const int n = truncation > 0 ? truncation : recommended_truncation(amp);
  const auto fb = fock_expand_superposition(bra, n);
  const auto fk = fock_expand_superposition(ket, n);
  const auto r = fock_inner_product(fb, fk);
  return {std::abs(r.value), r.error_bound, n};
}

std::ofstream open_output(const std::string& path) {
  std::ofstream f(path);
  if (!f)
    throw solver_error(errc::invalid_argument,
                       "cannot open output file '" + path + "'");
  return f;
}

int region_gray(region_kind k) {
  switch (k) {
    case region_kind::always_orthogonal: return 0;
    case region_kind::no_solution: return 51;
    case region_kind::zero_line: return 102;
    case region_kind::pi_line: return 153;
    case region_kind::half_integer_class: return 204;
    case region_kind::integer_class: return 255;
  }
  return 0;
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

// ---------------------------------------------------------------- classify

struct classify_config {
  double phi1 = 0, phi2 = 0;
  bool degrees = false;
};

int run_classify(const classify_config& c, std::ostream& out) {
  const double p1 = to_radians(c.phi1, c.degrees);
  const double p2 = to_radians(c.phi2, c.degrees);
  const auto region = classify_phase_pair(p1, p2);
  json j{{"command", "classify"},
         {"inputs", {{"phi1", p1}, {"phi2", p2}}}};
  j["kind"] = region_name(region.kind);
  if (region.omega) j["omega"] = *region.omega;
  if (auto lat = region.lattice()) j["lattice"] = lattice_name(*lat);
  emit(out, j);
  return 0;
}

// ------------------------------------------------------------- beta-family

struct family_config {
  std::string alpha, krange;
  double phi1 = 0, phi2 = 0;
  bool degrees = false, verify = false;
  double verification_tol = -1;
  int truncation = 0;
};

int run_family(const family_config& c, std::ostream& out) {
  const complexd alpha = parse_complex(c.alpha);
  const auto [k_min, k_max] = parse_k_range(c.krange);
  const double p1 = to_radians(c.phi1, c.degrees);
  const double p2 = to_radians(c.phi2, c.degrees);
  tolerances<double> tol;
  if (c.verification_tol > 0) tol.verification = c.verification_tol;

  const auto region = classify_phase_pair(p1, p2, tol);
  const auto family = solve_beta_family(alpha, p1, p2, k_min, k_max, tol);

  json j{{"command", "beta-family"},
         {"inputs",
          {{"alpha", cjson(alpha)},
           {"phi1", p1},
           {"phi2", p2},
           {"k_min", k_min},
           {"k_max", k_max}}}};
  j["kind"] = region_name(region.kind);
  j["omega"] = *region.omega;
  j["lattice"] = lattice_name(*region.lattice());
  json members = json::array();
  for (const auto& [k, beta] : family) {
    json m{{"k", k}, {"beta", cjson(beta)}};
    m["residual"] = orthogonality_residual(cat_vector<double>(beta, p2),
                                           cat_vector<double>(alpha, p1));
    if (c.verify) {
      const auto o = oracle_cat({beta, p2}, {alpha, p1}, c.truncation);
      m["oracle_abs"] = o.abs_inner;
      m["oracle_error_bound"] = o.error_bound;
    }
    members.push_back(std::move(m));
  }
  j["members"] = std::move(members);
  emit(out, j);
  return 0;
}

// -------------------------------------------------------------------- phi2

struct phi2_config {
  std::string alpha, beta;
  double phi1 = 0;
  bool degrees = false, verify = false;
  double quantization_tol = -1, validation_tol = -1;
  int truncation = 0;
};

int run_phi2(const phi2_config& c, std::ostream& out) {
  const complexd alpha = parse_complex(c.alpha);
  const complexd beta = parse_complex(c.beta);
  const double p1 = to_radians(c.phi1, c.degrees);
  tolerances<double> tol;
  if (c.quantization_tol > 0) tol.quantization = c.quantization_tol;
  if (c.validation_tol > 0) tol.phi2_validation = c.validation_tol;

  const auto sol = solve_phi2(alpha, beta, p1, tol);
  json j{{"command", "phi2"},
         {"inputs",
          {{"alpha", cjson(alpha)}, {"beta", cjson(beta)}, {"phi1", p1}}}};
  j["phi2"] = sol.phi2;
  if (c.degrees) j["phi2_degrees"] = sol.phi2 * 180.0 / std::numbers::pi;
  j["lattice"] = lattice_json(sol.lattice);
  j["omega"] = metric_form(alpha, beta);
  j["residual"] = sol.residual;
  if (c.verify) {
    const auto o = oracle_cat({beta, sol.phi2}, {alpha, p1}, c.truncation);
    j["oracle_abs"] = o.abs_inner;
    j["oracle_error_bound"] = o.error_bound;
    j["oracle_truncation"] = o.truncation;
  }
  emit(out, j);
  return 0;
}

// ----------------------------------------------------------------- partner

struct partner_config {
  std::string type;       // even | odd | coherent | j
  std::string alpha;      // complex for even/odd
  double real_alpha = 0;  // real for coherent / d for j
  long n = 0;
  bool verify = false;
  double verification_tol = -1;
  int truncation = 0;
};

int run_partner(const partner_config& c, std::ostream& out) {
  tolerances<double> tol;
  if (c.verification_tol > 0) tol.verification = c.verification_tol;
  json j{{"command", "partner"}, {"type", c.type}};

  auto enforce = [&](double residual) {
    if (!(residual < tol.verification))
      throw solver_error(errc::verification_failed,
                         "partner failed the orthogonality check");
    j["residual"] = residual;
  };

  if (c.type == "even" || c.type == "odd") {
    if (c.alpha.empty())
      throw solver_error(errc::invalid_argument,
                         "--alpha re,im is required for this partner type");
    const complexd alpha = parse_complex(c.alpha);
    const double phi = c.type == "even" ? 0.0 : std::numbers::pi;
    const complexd beta = c.type == "even" ? even_cat_partner(alpha, c.n)
                                           : odd_cat_partner(alpha, c.n);
    j["inputs"] = {{"alpha", cjson(alpha)}, {"n", c.n}};
    j["beta"] = cjson(beta);
    j["lattice"] = lattice_json(nearest_lattice(symplectic_form(alpha, beta)).cls);
    enforce(orthogonality_residual(cat_vector<double>(beta, phi),
                                   cat_vector<double>(alpha, phi)));
    if (c.verify) {
      const auto o = oracle_cat({beta, phi}, {alpha, phi}, c.truncation);
      j["oracle_abs"] = o.abs_inner;
      j["oracle_error_bound"] = o.error_bound;
    }
  } else if (c.type == "coherent") {
    const complexd beta = coherent_vs_cat_partner(c.real_alpha, c.n);
    j["inputs"] = {{"alpha", c.real_alpha}, {"n", c.n}};
    j["beta"] = cjson(beta);
    const auto bra = coherent_term<double>(beta);
    const auto ket =
        as_superposition(cat_vector<double>({c.real_alpha, 0.0}, 0.0));
    j["lattice"] = lattice_json(
        nearest_lattice(symplectic_form(complexd(c.real_alpha, 0), beta)).cls);
    enforce(superposition_residual(bra, ket));
    if (c.verify) {
      const auto o = oracle_superposition(bra, ket, c.truncation);
      j["oracle_abs"] = o.abs_inner;
      j["oracle_error_bound"] = o.error_bound;
    }
  } else if (c.type == "j") {
    const auto jv = j_vector_partner(c.real_alpha, c.n);
    j["inputs"] = {{"d", c.real_alpha}, {"k", c.n}};
    j["delta"] = jv.delta;
    j["gamma_plus"] = cjson(jv.gamma_plus);
    j["gamma_minus"] = cjson(jv.gamma_minus);
    const auto bra = as_superposition(jv);
    const auto ket =
        as_superposition(cat_vector<double>({jv.d, 0.0}, 0.0));
    enforce(superposition_residual(bra, ket));
    if (c.verify) {
      const auto o = oracle_superposition(bra, ket, c.truncation);
      j["oracle_abs"] = o.abs_inner;
      j["oracle_error_bound"] = o.error_bound;
    }
  } else {
    throw solver_error(errc::invalid_argument,
                       "unknown partner type '" + c.type + "'");
  }
  emit(out, j);
  return 0;
}

// ------------------------------------------------------------------- radii

struct radii_config {
  std::string lattice = "half-integer";
  long n_max = 10;
  double omega = 0;
  std::string output, format;
};

int run_radii(const radii_config& c, std::ostream& out) {
  lattice_kind kind;
  if (c.lattice == "integer")
    kind = lattice_kind::integer;
  else if (c.lattice == "half-integer" || c.lattice == "half")
    kind = lattice_kind::half_integer;
  else
    throw solver_error(errc::invalid_argument,
                       "--lattice must be 'integer' or 'half-integer'");

  const auto areas = band_areas(kind, c.n_max, c.omega);
  std::string format = c.format;
  if (format.empty())
    format = c.output.empty() ? "json" : "csv";

  if (format == "csv") {
    if (c.output.empty()) {
      write_band_csv(out, kind, areas, c.omega);
    } else {
      auto f = open_output(c.output);
      write_band_csv(f, kind, areas, c.omega);
      emit(out, json{{"command", "radii"}, {"output", c.output}});
    }
    return 0;
  }
  if (format != "json")
    throw solver_error(errc::invalid_argument,
                       "--format must be 'json' or 'csv'");

  json radii = json::array(), bands = json::array();
  for (long n = 0; n <= c.n_max; ++n)
    radii.push_back(equal_photon_radius(quantization_class{kind, n}, c.omega));
  for (double a : areas) bands.push_back(a);
  json j{{"command", "radii"},
         {"lattice", lattice_name(kind)},
         {"omega", c.omega},
         {"radii", std::move(radii)},
         {"band_areas", std::move(bands)}};
  emit(out, j);
  return 0;
}

// ------------------------------------------------------------------ husimi

struct husimi_config {
  std::string alpha, coherent, c1, gamma1, c2, gamma2;
  double phi = 0;
  bool degrees = false, no_normalize = false;
  grid_geometry<double> grid{-6, 6, -6, 6, 241, 241};
  int jobs = 1;
  std::string output, format;
};

two_term_superposition<double> husimi_state(const husimi_config& c,
                                            json& state_json) {
  const int picked = int(!c.alpha.empty()) + int(!c.coherent.empty()) +
                     int(!c.gamma1.empty());
  if (picked != 1)
    throw solver_error(errc::invalid_argument,
                       "pick exactly one of --alpha (cat), --coherent, or the "
                       "--c1/--gamma1/--c2/--gamma2 superposition");
  if (!c.alpha.empty()) {
    const complexd alpha = parse_complex(c.alpha);
    const double phi = to_radians(c.phi, c.degrees);
    state_json = {{"kind", "cat"}, {"alpha", cjson(alpha)}, {"phi", phi}};
    return as_superposition(cat_vector<double>(alpha, phi));
  }
  if (!c.coherent.empty()) {
    const complexd gamma = parse_complex(c.coherent);
    state_json = {{"kind", "coherent"}, {"gamma", cjson(gamma)}};
    return coherent_term<double>(gamma);
  }
  if (c.c1.empty() || c.c2.empty() || c.gamma2.empty())
    throw solver_error(errc::invalid_argument,
                       "superposition needs all of --c1 --gamma1 --c2 "
                       "--gamma2");
  two_term_superposition<double> s{parse_complex(c.c1), parse_complex(c.gamma1),
                                   parse_complex(c.c2),
                                   parse_complex(c.gamma2)};
  state_json = {{"kind", "superposition"},
                {"c1", cjson(s.c1)},
                {"gamma1", cjson(s.gamma1)},
                {"c2", cjson(s.c2)},
                {"gamma2", cjson(s.gamma2)}};
  return s;
}

int run_husimi(const husimi_config& c, std::ostream& out) {
  if (c.grid.nx < 2 || c.grid.ny < 2)
    throw solver_error(errc::invalid_argument, "grid must be >= 2 per axis");
  if (c.jobs < 1)
    throw solver_error(errc::invalid_argument, "--jobs must be >= 1");
  json state_json;
  const auto state = husimi_state(c, state_json);
  const auto q = husimi(state, c.grid, !c.no_normalize, c.jobs);

  std::string format = c.format;
  if (format.empty()) {
    if (c.output.size() > 4 && c.output.ends_with(".pgm"))
      format = "pgm";
    else if (c.output.size() > 4 && c.output.ends_with(".csv"))
      format = "csv";
    else if (!c.output.empty())
      throw solver_error(errc::invalid_argument,
                         "cannot infer --format from '" + c.output + "'");
  }
  if (!format.empty() && c.output.empty())
    throw solver_error(errc::invalid_argument,
                       "--format csv/pgm needs --output");
  if (!c.output.empty()) {
    auto f = open_output(c.output);
    if (format == "pgm")
      write_q_pgm(f, q);
    else if (format == "csv")
      write_q_csv(f, q, c.grid);
    else
      throw solver_error(errc::invalid_argument,
                         "--format must be 'csv' or 'pgm'");
  }

  json j{{"command", "husimi"}, {"state", state_json}};
  j["grid"] = {{"re_min", c.grid.re_min}, {"re_max", c.grid.re_max},
               {"im_min", c.grid.im_min}, {"im_max", c.grid.im_max},
               {"nx", c.grid.nx},         {"ny", c.grid.ny}};
  j["normalized"] = !c.no_normalize;
  j["max"] = double(q.maxCoeff());
  j["quadrature"] = husimi_quadrature_check(q, c.grid);
  if (!c.output.empty()) {
    j["output"] = c.output;
    j["format"] = format;
  }
  emit(out, j);
  return 0;
}

// --------------------------------------------------------------- phase-map

struct phase_map_config {
  int resolution = 512;
  int jobs = 1;
  std::string output;
};

int run_phase_map(const phase_map_config& c, std::ostream& out) {
  if (c.resolution < 2)
    throw solver_error(errc::invalid_argument, "--resolution must be >= 2");
  if (c.jobs < 1)
    throw solver_error(errc::invalid_argument, "--jobs must be >= 1");
  const int n = c.resolution;
  const double step = two_pi<double> / n;

  // Node sampling phi = i * (2 pi / N) so the special points 0 and pi are
  // hit exactly (N even makes i*step reach pi without rounding).
  std::vector<std::uint8_t> kinds(std::size_t(n) * std::size_t(n));
  detail::partition_rows(n, c.jobs, [&](int row) {
    const double p2 = row * step;
    for (int col = 0; col < n; ++col) {
      const auto r = classify_phase_pair(col * step, p2);
      kinds[std::size_t(row) * n + col] = std::uint8_t(r.kind);
    }
  });

  std::array<long, 6> counts{};
  json ao_cells = json::array();
  for (int row = 0; row < n; ++row)
    for (int col = 0; col < n; ++col) {
      const auto k = region_kind(kinds[std::size_t(row) * n + col]);
      ++counts[std::size_t(k)];
      if (k == region_kind::always_orthogonal && ao_cells.size() < 8)
        ao_cells.push_back(json{{"phi1", col * step}, {"phi2", row * step}});
    }

  const long total = long(n) * long(n);
  const long integer_folded = counts[std::size_t(region_kind::integer_class)] +
                              counts[std::size_t(region_kind::pi_line)];
  const long half_folded =
      counts[std::size_t(region_kind::half_integer_class)] +
      counts[std::size_t(region_kind::zero_line)];

  if (!c.output.empty()) {
    auto f = open_output(c.output);
    // Top pixel row is the largest phi2; phi1 runs left to right.
    f << "P2\n" << n << ' ' << n << "\n255\n";
    for (int row = n - 1; row >= 0; --row)
      for (int col = 0; col < n; ++col)
        f << region_gray(region_kind(kinds[std::size_t(row) * n + col]))
          << (col + 1 == n ? '\n' : ' ');
  }

  json j{{"command", "phase-map"}, {"resolution", n}};
  json cj;
  for (std::size_t k = 0; k < counts.size(); ++k)
    cj[region_name(region_kind(k))] = counts[k];
  j["counts"] = std::move(cj);
  // Fractions fold the one-phase-special lines into the class whose lattice
  // they continue (pi line -> integer, zero line -> half-integer).
  j["integer_fraction"] = double(integer_folded) / double(total);
  j["half_integer_fraction"] = double(half_folded) / double(total);
  j["always_orthogonal_cells"] = std::move(ao_cells);
  if (!c.output.empty()) j["output"] = c.output;
  emit(out, j);
  return 0;
}

// ------------------------------------------------------------------ verify

struct verify_config {
  std::uint64_t seed = default_seed;
  int samples = 1000;
  int truncation = 0;
};

struct sweep_check {
  std::string name;
  long samples;
  double observed;
  double bound;
  bool upper;  // true: pass iff observed <= bound; false: pass iff observed > bound
  bool pass() const { return upper ? observed <= bound : observed > bound; }
};

json check_json(const sweep_check& c) {
  return json{{"name", c.name},
              {"samples", c.samples},
              {"observed", c.observed},
              {"bound", c.bound},
              {"comparison", c.upper ? "<=" : ">"},
              {"pass", c.pass()}};
}

// Random phase bounded away from {0, pi} and from the cosine zeros of the
// classification, so sampled pairs always land in an open class.
double open_phase(sample_stream& rng) {
  for (;;) {
    const double p = rng.uniform(0.0, two_pi<double>);
    if (circular_distance(p, 0.0) > 0.15 &&
        circular_distance(p, std::numbers::pi) > 0.15)
      return p;
  }
}

std::pair<double, double> open_pair(sample_stream& rng) {
  for (;;) {
    const double p1 = open_phase(rng);
    const double p2 = open_phase(rng);
    if (std::abs(std::cos((p1 - p2) / 2)) >= 0.05 &&
        std::abs(std::cos((p1 + p2) / 2)) >= 0.05)
      return {p1, p2};
  }
}

int run_verify(const verify_config& c, std::ostream& out) {
  if (c.samples < 10)
    throw solver_error(errc::invalid_argument, "--samples must be >= 10");
  std::vector<sweep_check> checks;
  const double pi = std::numbers::pi;

  {  // |<beta|alpha>|^2 against the Gaussian distance law.
    sample_stream rng(c.seed + 1);
    double worst = 0;
    for (int i = 0; i < c.samples; ++i) {
      const complexd a = rng.disc(6.0), b = rng.disc(6.0);
      const double got = std::norm(coherent_overlap(b, a));
      const double want = std::exp(-std::norm(a - b));
      worst = std::max(worst, std::abs(got / want - 1.0));
    }
    checks.push_back({"overlap_law", c.samples, worst, 1e-12, true});
  }

  {  // Closed-form cat inner products against the number-basis oracle.
    sample_stream rng(c.seed + 2);
    const int samples = std::min(c.samples, 200);
    double worst = 0;
    for (int i = 0; i < samples; ++i) {
      const cat_vector<double> ket(rng.disc(4.0),
                                   rng.uniform(0.0, two_pi<double>));
      const cat_vector<double> bra(rng.disc(4.0),
                                   rng.uniform(0.0, two_pi<double>));
      const complexd analytic = cat_inner_product(bra, ket);
      const auto o = oracle_cat(bra, ket, c.truncation);
      const double excess =
          std::abs(std::abs(analytic) - o.abs_inner) - o.error_bound;
      worst = std::max(worst, excess);
    }
    checks.push_back({"analytic_vs_oracle", samples, worst, 1e-11, true});
  }

  {  // Opposite-parity cats are orthogonal for every pair of amplitudes.
    sample_stream rng(c.seed + 3);
    double worst_analytic = 0, worst_oracle = 0;
    for (int i = 0; i < c.samples; ++i) {
      const cat_vector<double> even(rng.disc(6.0), 0.0);
      const cat_vector<double> odd(rng.disc(6.0), pi);
      worst_analytic =
          std::max(worst_analytic, std::abs(cat_inner_product(odd, even)));
    }
    const int oracle_samples = std::min(c.samples, 200);
    sample_stream rng2(c.seed + 3);
    for (int i = 0; i < oracle_samples; ++i) {
      const cat_vector<double> even(rng2.disc(6.0), 0.0);
      const cat_vector<double> odd(rng2.disc(6.0), pi);
      worst_oracle =
          std::max(worst_oracle, oracle_cat(odd, even, c.truncation).abs_inner);
    }
    checks.push_back(
        {"parity_orthogonality", c.samples, worst_analytic, 1e-13, true});
    checks.push_back({"parity_orthogonality_oracle", oracle_samples,
                      worst_oracle, 1e-11, true});
  }

  {  // Closed-form partners from every family, plus the rotation property.
    sample_stream rng(c.seed + 4);
    double worst_residual = 0, worst_rotation = 0;
    const int alphas = 100;
    for (int i = 0; i < alphas; ++i) {
      const complexd alpha = rng.annulus(0.3, 5.0);
      const double d = (rng.uniform() < 0.5 ? -1.0 : 1.0) * rng.uniform(0.3, 5.0);
      for (long n = 0; n < 10; ++n) {
        const complexd be = even_cat_partner(alpha, n);
        worst_residual = std::max(
            worst_residual,
            orthogonality_residual(cat_vector<double>(be, 0.0),
                                   cat_vector<double>(alpha, 0.0)));
        const complexd bo = odd_cat_partner(alpha, n + 1);
        worst_residual = std::max(
            worst_residual,
            orthogonality_residual(cat_vector<double>(bo, pi),
                                   cat_vector<double>(alpha, pi)));
        for (complexd b : {be, bo}) {
          // arg(beta) - arg(alpha) = +-pi/2 (mod pi)
          double dev = std::fmod(std::arg(b) - std::arg(alpha), pi);
          if (dev < 0) dev += pi;
          worst_rotation =
              std::max(worst_rotation, std::abs(dev - pi / 2));
        }
        const complexd bc = coherent_vs_cat_partner(d, n);
        worst_residual = std::max(
            worst_residual,
            superposition_residual(
                coherent_term<double>(bc),
                as_superposition(cat_vector<double>({d, 0.0}, 0.0))));
        const auto jv = j_vector_partner(d, n);
        worst_residual = std::max(
            worst_residual,
            superposition_residual(
                as_superposition(jv),
                as_superposition(cat_vector<double>({jv.d, 0.0}, 0.0))));
      }
    }
    checks.push_back(
        {"family_partners", long(alphas) * 10, worst_residual, 1e-10, true});
    checks.push_back(
        {"rotation_property", long(alphas) * 20, worst_rotation, 1e-12, true});
  }

  {  // Solver outputs sit on the lattice; perturbed amplitudes never fake
     // orthogonality.
    sample_stream rng(c.seed + 5);
    double worst_lattice = 0, min_residual_sq = 1.0;
    for (int i = 0; i < c.samples; ++i) {
      const auto [p1, p2] = open_pair(rng);
      const auto region = classify_phase_pair(p1, p2);
      const complexd alpha = rng.annulus(0.5, 4.0);
      const long k = long(rng.uniform(0.0, 7.0)) - 3;
      const auto family = solve_beta_family(alpha, p1, p2, k, k);
      const complexd beta = family[0].second;
      worst_lattice = std::max(
          worst_lattice, nearest_lattice(symplectic_form(alpha, beta)).residual);

      const double half =
          region.kind == region_kind::half_integer_class ? 0.5 : 0.0;
      const double lambda = (double(k) + half) * pi;
      const double delta = rng.uniform(2e-3, pi / 2 - 2e-3) *
                           (rng.uniform() < 0.5 ? -1.0 : 1.0);
      const complexd beta_off =
          complexd(*region.omega, -(lambda + delta)) / std::conj(alpha);
      const double r = orthogonality_residual(
          cat_vector<double>(beta_off, p2), cat_vector<double>(alpha, p1));
      min_residual_sq = std::min(min_residual_sq, r * r);
    }
    checks.push_back(
        {"solver_on_lattice", c.samples, worst_lattice, 1e-10, true});
    checks.push_back({"perturbed_not_orthogonal", c.samples, min_residual_sq,
                      1e-8, false});
  }

  {  // phi2 forward/backward round trip.
    sample_stream rng(c.seed + 6);
    double worst = 0;
    for (int i = 0; i < c.samples; ++i) {
      const auto [p1, p2] = open_pair(rng);
      const auto region = classify_phase_pair(p1, p2);
      const complexd alpha = rng.annulus(0.4, 4.0);
      const double half =
          region.kind == region_kind::half_integer_class ? 0.5 : 0.0;
      const long k = long(rng.uniform(0.0, 5.0)) - 2;
      const complexd beta =
          complexd(*region.omega, -(double(k) + half) * pi) / std::conj(alpha);
      const auto sol = solve_phi2(alpha, beta, p1);
      worst = std::max(worst, circular_distance(sol.phi2, p2));
    }
    checks.push_back({"phi2_roundtrip", c.samples, worst, 1e-9, true});
  }

  bool all = true;
  json arr = json::array();
  for (const auto& ch : checks) {
    all = all && ch.pass();
    arr.push_back(check_json(ch));
  }
  json j{{"command", "verify"},
         {"seed", c.seed},
         {"samples", c.samples},
         {"checks", std::move(arr)},
         {"pass", all}};
  emit(out, j);
  return all ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{
      "Exact inner products, orthogonality classification, and phase-space "
      "rasters for two-component superpositions of coherent states"};
  app.name("orthocat");
  app.require_subcommand(1);

  classify_config cc;
  auto* sc = app.add_subcommand("classify",
                                "Classify a phase pair on the torus");
  sc->add_option("--phi1", cc.phi1, "First superposition phase")->required();
  sc->add_option("--phi2", cc.phi2, "Second superposition phase")->required();
  sc->add_flag("--degrees", cc.degrees, "Angles are given in degrees");

  family_config fc;
  auto* sf = app.add_subcommand(
      "beta-family", "Enumerate the quantized orthogonal partners of a cat");
  sf->add_option("--alpha", fc.alpha, "Cat amplitude as re,im")->required();
  sf->add_option("--phi1", fc.phi1, "Phase of the given cat")->required();
  sf->add_option("--phi2", fc.phi2, "Phase of the partner cat")->required();
  sf->add_option("--k", fc.krange, "Lattice index or range k_min..k_max")
      ->required();
  sf->add_flag("--degrees", fc.degrees, "Angles are given in degrees");
  sf->add_flag("--verify", fc.verify, "Cross-check against the number-basis oracle");
  sf->add_option("--verification-tol", fc.verification_tol,
                 "Override the internal residual tolerance");
  sf->add_option("--truncation", fc.truncation, "Override oracle depth");

  phi2_config pc;
  auto* sp = app.add_subcommand(
      "phi2", "Solve for the unique partner phase of a given amplitude pair");
  sp->add_option("--alpha", pc.alpha, "First amplitude as re,im")->required();
  sp->add_option("--beta", pc.beta, "Second amplitude as re,im")->required();
  sp->add_option("--phi1", pc.phi1, "Phase of the first cat")->required();
  sp->add_flag("--degrees", pc.degrees, "Angles are given in degrees");
  sp->add_flag("--verify", pc.verify, "Cross-check against the number-basis oracle");
  sp->add_option("--quantization-tol", pc.quantization_tol,
                 "Override the lattice snap tolerance");
  sp->add_option("--validation-tol", pc.validation_tol,
                 "Override the substitution-check tolerance");
  sp->add_option("--truncation", pc.truncation, "Override oracle depth");

  partner_config tc;
  auto* st = app.add_subcommand("partner",
                                "Closed-form orthogonal partner constructions");
  st->add_option("--type", tc.type, "even | odd | coherent | j")->required();
  st->add_option("--alpha", tc.alpha, "Cat amplitude as re,im (even/odd)");
  st->add_option("--alpha-real", tc.real_alpha,
                 "Real cat amplitude (coherent) or displacement d (j)");
  st->add_option("--n", tc.n, "Family index")->required();
  st->add_flag("--verify", tc.verify, "Cross-check against the number-basis oracle");
  st->add_option("--verification-tol", tc.verification_tol,
                 "Override the internal residual tolerance");
  st->add_option("--truncation", tc.truncation, "Override oracle depth");

  radii_config rc;
  auto* sr = app.add_subcommand(
      "radii", "Equal-photon radii and annular band areas of one lattice");
  sr->add_option("--lattice", rc.lattice, "integer | half-integer");
  sr->add_option("--n-max", rc.n_max, "Number of bands")->required();
  sr->add_option("--omega", rc.omega, "Metric form Re(alpha conj(beta))");
  sr->add_option("--output", rc.output, "Write CSV here instead of stdout");
  sr->add_option("--format", rc.format, "json | csv");

  husimi_config hc;
  auto* sh = app.add_subcommand("husimi",
                                "Sample Q(gamma) on a rectangular grid");
  sh->add_option("--alpha", hc.alpha, "Cat amplitude as re,im");
  sh->add_option("--phi", hc.phi, "Cat phase (with --alpha)");
  sh->add_option("--coherent", hc.coherent, "Coherent amplitude as re,im");
  sh->add_option("--c1", hc.c1, "Superposition coefficient 1");
  sh->add_option("--gamma1", hc.gamma1, "Superposition amplitude 1");
  sh->add_option("--c2", hc.c2, "Superposition coefficient 2");
  sh->add_option("--gamma2", hc.gamma2, "Superposition amplitude 2");
  sh->add_flag("--degrees", hc.degrees, "Angles are given in degrees");
  sh->add_flag("--no-normalize", hc.no_normalize,
               "Skip division by the state norm");
  sh->add_option("--re-min", hc.grid.re_min, "Grid bound");
  sh->add_option("--re-max", hc.grid.re_max, "Grid bound");
  sh->add_option("--im-min", hc.grid.im_min, "Grid bound");
  sh->add_option("--im-max", hc.grid.im_max, "Grid bound");
  sh->add_option("--nx", hc.grid.nx, "Samples per row");
  sh->add_option("--ny", hc.grid.ny, "Samples per column");
  sh->add_option("--jobs", hc.jobs, "Worker threads");
  sh->add_option("--output", hc.output, "Raster/CSV file path");
  sh->add_option("--format", hc.format, "csv | pgm");

  phase_map_config mc;
  auto* sm = app.add_subcommand(
      "phase-map", "Rasterize the classification of the whole phase torus");
  sm->add_option("--resolution", mc.resolution, "Samples per axis");
  sm->add_option("--jobs", mc.jobs, "Worker threads");
  sm->add_option("--output", mc.output, "PGM file path");

  verify_config vc;
  auto* sv = app.add_subcommand(
      "verify", "Run the analytic-vs-oracle property sweep (CI smoke test)");
  sv->add_option("--seed", vc.seed, "Sampling seed");
  sv->add_option("--samples", vc.samples, "Samples per check");
  sv->add_option("--truncation", vc.truncation, "Override oracle depth");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (sc->parsed()) return run_classify(cc, out);
    if (sf->parsed()) return run_family(fc, out);
    if (sp->parsed()) return run_phi2(pc, out);
    if (st->parsed()) return run_partner(tc, out);
    if (sr->parsed()) return run_radii(rc, out);
    if (sh->parsed()) return run_husimi(hc, out);
    if (sm->parsed()) return run_phase_map(mc, out);
    if (sv->parsed()) return run_verify(vc, out);
  } catch (const solver_error& e) {
    emit(out, json{{"error", e.name()}, {"message", e.what()}});
    return e.code() == errc::invalid_argument ? 2 : 3;
  } catch (const CLI::ParseError& e) {
    // value-format errors surface when the option text is interpreted, after
    // command-line parsing proper has succeeded
    emit(out, json{{"error", "InvalidArgument"}, {"message", e.what()}});
    return 2;
  }
  err << "no subcommand selected\n";
  return 2;
}

}  // namespace orthocat::cli
