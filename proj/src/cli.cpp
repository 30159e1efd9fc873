#include "fscrit/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "fscrit/gauss_lucas.hpp"
#include "fscrit/morse.hpp"
#include "fscrit/quadric.hpp"

namespace fscrit::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr int kMaxRejections = 100000;

Json complex_json(Complex c) { return Json::array({c.real(), c.imag()}); }

Json point_json(const ProjectivePoint& p) {
  Json out = Json::array();
  for (int i = 0; i <= p.dim(); ++i) out.push_back(complex_json(p[i]));
  return out;
}

Json sphere_json(const SpherePoint& x) { return Json::array({x.xyz().x(), x.xyz().y(), x.xyz().z()}); }

Json index_json(const std::optional<int>& index) { return index ? Json(*index) : Json(nullptr); }

Json critical_json(const CriticalPoint& cp) {
  Json j;
  j["point"] = point_json(cp.point);
  j["index"] = index_json(cp.index);
  j["residual"] = cp.residual;
  j["margin"] = cp.nondeg_margin;
  j["degenerate"] = !cp.index.has_value();
  j["multiplicity_hint"] = cp.multiplicity_hint;
  return j;
}

Json zeros_json(const std::vector<ZeroCluster>& zeros) {
  Json out = Json::array();
  for (const auto& z : zeros) out.push_back(Json{{"point", point_json(z.point)}, {"multiplicity", z.multiplicity}});
  return out;
}

Json report_json(const SolveReport& r) {
  Json j;
  j["criticals"] = Json::array();
  for (const auto& cp : r.criticals) j["criticals"].push_back(critical_json(cp));
  if (!r.zeros.empty()) j["zeros"] = zeros_json(r.zeros);
  j["starts_used"] = r.starts_used;
  j["zero_hits"] = r.zero_hits;
  j["max_starts_exceeded"] = r.max_starts_exceeded;
  j["certification"] = Json{{"status", to_string(r.certified.status)}, {"reason", r.certified.reason}};
  return j;
}

Json polygon_json(const SphericalPolygon& p) {
  Json j;
  j["kind"] = to_string(p.kind);
  j["pole"] = sphere_json(p.pole);
  j["vertices"] = Json::array();
  for (const auto& v : p.vertices) j["vertices"].push_back(sphere_json(v));
  return j;
}

Json config_json(const RunConfig& c) {
  Json j;
  j["command"] = c.command;
  j["n"] = c.n;
  j["m"] = c.m;
  j["seed"] = c.seed;
  j["trials"] = c.trials;
  j["residual_tol"] = c.residual_tol;
  j["dedup_tol"] = c.dedup_tol;
  j["degen_tol"] = c.degen_tol;
  j["max_starts"] = c.max_starts;
  j["verify"] = c.verify;
  if (!c.input.empty()) j["input"] = c.input;
  if (!c.matrix.empty()) j["matrix"] = c.matrix;
  if (!c.diag.empty()) j["diag"] = c.diag;
  return j;
}

// Header, body and summary in one document. --jobs is left out of the echo
// because it does not affect the results.
void emit_document(std::ostream& out, const RunConfig& c, Json records, Json summary) {
  Json doc;
  doc["header"] = Json{{"tool", "fscrit"}, {"version", kVersion}, {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                                                                               std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                                                               std::to_string(EIGEN_MINOR_VERSION)},
                       {"config", config_json(c)}};
  doc["records"] = std::move(records);
  doc["summary"] = std::move(summary);
  out << doc.dump(2) << '\n';
  out.flush();
}

std::string num(double x) { return format_double(x); }

void point_columns(std::ostream& os, const ProjectivePoint& p) {
  for (int i = 0; i <= p.dim(); ++i) os << ',' << num(p[i].real()) << ',' << num(p[i].imag());
}

void point_header(std::ostream& os, int n) {
  for (int i = 0; i <= n; ++i) os << ",re" << i << ",im" << i;
}

std::vector<Section> load_sections(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open section file '" + path + "'");
  return read_sections(in);
}

Section load_section(const std::string& path) {
  auto sections = load_sections(path);
  if (sections.size() != 1) throw std::invalid_argument("'" + path + "' must contain exactly one section");
  return std::move(sections.front());
}

}  // namespace

void validate(const RunConfig& c) {
  if (c.n < 1) throw std::invalid_argument("--n must be >= 1");
  if (c.m < 1) throw std::invalid_argument("--m must be >= 1");
  if (c.trials < 1) throw std::invalid_argument("--trials must be >= 1");
  if (c.jobs < 1) throw std::invalid_argument("--jobs must be >= 1");
  if (!(c.residual_tol > 0.0)) throw std::invalid_argument("--residual-tol must be positive");
  if (!(c.dedup_tol > 0.0)) throw std::invalid_argument("--dedup-tol must be positive");
  if (!(c.degen_tol > 0.0)) throw std::invalid_argument("--degen-tol must be positive");
  if (c.max_starts < 0) throw std::invalid_argument("--max-starts must be non-negative");
}

SolveOptions solve_options(const RunConfig& c) {
  SolveOptions o;
  o.residual_tol = c.residual_tol;
  o.dedup_tol = c.dedup_tol;
  o.degen_tol = c.degen_tol;
  o.max_starts = c.max_starts;
  return o;
}

std::uint64_t trial_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void parallel_for(int count, int jobs, const std::function<void(int)>& fn) {
  const int workers = std::max(1, std::min(jobs, count));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) fn(i);
    });
  for (auto& t : pool) t.join();
}

CMatrix read_matrix(std::istream& is) {
  int d = 0;
  if (!(is >> d) || d < 2) throw std::invalid_argument("matrix file: expected a size >= 2 on the first line");
  CMatrix c(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      double re = 0.0, im = 0.0;
      if (!(is >> re >> im)) throw std::invalid_argument("matrix file: expected " + std::to_string(d * d) + " re/im pairs");
      c(i, j) = Complex(re, im);
    }
  return c;
}

int cmd_sample(const RunConfig& c, std::ostream& out) {
  std::vector<Section> sections;
  for (int t = 0; t < c.trials; ++t) sections.push_back(random_section(c.n, c.m, trial_seed(c.seed, t)));
  if (c.format == OutputFormat::Tabular) {
    out << "trial,seed";
    for (int v = 0; v <= c.n; ++v) out << ",a" << v;
    out << ",re,im\n";
    for (int t = 0; t < c.trials; ++t) {
      const Section& s = sections[t];
      for (std::size_t k = 0; k < s.basis().size(); ++k) {
        out << t << ',' << trial_seed(c.seed, t);
        for (int a : s.basis()[k]) out << ',' << a;
        out << ',' << num(s.coeffs()(k).real()) << ',' << num(s.coeffs()(k).imag()) << '\n';
      }
    }
    return kExitOk;
  }
  // Plain section files, readable by --input.
  for (int t = 0; t < c.trials; ++t) {
    out << "# trial " << t << " seed " << trial_seed(c.seed, t) << '\n';
    write_section(out, sections[t]);
  }
  return kExitOk;
}

int cmd_solve(const RunConfig& c, std::ostream& out) {
  // Every section of --input, otherwise one random section per trial.
  std::vector<Section> sections;
  if (!c.input.empty()) {
    sections = load_sections(c.input);
  } else {
    for (int t = 0; t < c.trials; ++t) sections.push_back(random_section(c.n, c.m, trial_seed(c.seed, t)));
  }
  const int trials = static_cast<int>(sections.size());
  std::vector<std::optional<SolveReport>> reports(trials);
  std::vector<std::string> errors(trials);
  const SolveOptions opts = solve_options(c);
  parallel_for(trials, c.jobs, [&](int t) {
    try {
      reports[t] = find_critical_points(sections[t], opts);
    } catch (const std::exception& e) {
      errors[t] = e.what();
    }
  });

  int incomplete = 0, failed = 0;
  for (int t = 0; t < trials; ++t) {
    if (!reports[t]) {
      ++failed;
      continue;
    }
    if (reports[t]->certified.status == CertificationStatus::Failed || reports[t]->max_starts_exceeded) ++incomplete;
  }

  if (c.format == OutputFormat::Tabular) {
    out << "trial,point_id,index,residual,margin,multiplicity_hint";
    point_header(out, sections.front().n());
    out << '\n';
    for (int t = 0; t < trials; ++t) {
      if (!reports[t]) continue;
      for (std::size_t k = 0; k < reports[t]->criticals.size(); ++k) {
        const auto& cp = reports[t]->criticals[k];
        out << t << ',' << k << ',' << (cp.index ? std::to_string(*cp.index) : "") << ',' << num(cp.residual) << ','
            << num(cp.nondeg_margin) << ',' << cp.multiplicity_hint;
        point_columns(out, cp.point);
        out << '\n';
      }
    }
  } else {
    Json records = Json::array();
    for (int t = 0; t < trials; ++t) {
      Json r;
      r["trial"] = t;
      if (c.input.empty()) r["seed"] = trial_seed(c.seed, t);
      r["n"] = sections[t].n();
      r["m"] = sections[t].m();
      if (reports[t]) r["report"] = report_json(*reports[t]);
      else r["error"] = errors[t];
      records.push_back(std::move(r));
    }
    emit_document(out, c, std::move(records), Json{{"trials", trials}, {"incomplete", incomplete}, {"errors", failed}});
  }
  out.flush();
  if (failed > 0) return kExitInputError;
  return incomplete > 0 ? kExitSolverIncomplete : kExitOk;
}

int cmd_quadric(const RunConfig& c, std::ostream& out) {
  CMatrix matrix;
  if (!c.diag.empty()) {
    if (c.diag.size() < 2) throw std::invalid_argument("--diag needs at least two entries");
    matrix = CMatrix::Zero(c.diag.size(), c.diag.size());
    for (std::size_t i = 0; i < c.diag.size(); ++i) matrix(i, i) = c.diag[i];
  } else if (!c.matrix.empty()) {
    std::ifstream in(c.matrix);
    if (!in) throw std::invalid_argument("cannot open matrix file '" + c.matrix + "'");
    matrix = read_matrix(in);
  } else if (!c.input.empty()) {
    matrix = quadric_matrix(load_section(c.input));
  } else {
    throw std::invalid_argument("quadric needs --diag, --matrix or --input");
  }

  const QuadricCanonicalForm form = takagi(matrix);
  const Section s = quadric_section(matrix);
  const int n = s.n();
  std::vector<QuadricCritical> analytic;
  if (form.strict) analytic = quadric_critical_set(form);

  std::optional<SolveReport> numeric;
  bool match = false;
  if (c.verify && form.strict) {
    numeric = find_critical_points(s, solve_options(c));
    match = numeric->criticals.size() == analytic.size();
    for (const auto& q : analytic) {
      const bool found = std::any_of(numeric->criticals.begin(), numeric->criticals.end(), [&](const CriticalPoint& cp) {
        return cp.index == q.index && fs_distance(cp.point, q.point) < c.dedup_tol;
      });
      match = match && found;
    }
  }

  if (c.format == OutputFormat::Tabular) {
    out << "source,point_id,index";
    point_header(out, n);
    out << '\n';
    for (std::size_t k = 0; k < analytic.size(); ++k) {
      out << "analytic," << k << ',' << analytic[k].index;
      point_columns(out, analytic[k].point);
      out << '\n';
    }
    if (numeric)
      for (std::size_t k = 0; k < numeric->criticals.size(); ++k) {
        const auto& cp = numeric->criticals[k];
        out << "numeric," << k << ',' << (cp.index ? std::to_string(*cp.index) : "");
        point_columns(out, cp.point);
        out << '\n';
      }
  } else {
    Json rec;
    rec["n"] = n;
    rec["takagi_values"] = std::vector<double>(form.a.data(), form.a.data() + form.a.size());
    rec["strict"] = form.strict;
    rec["smooth"] = is_smooth_quadric(form);
    rec["analytic"] = Json::array();
    for (const auto& q : analytic) rec["analytic"].push_back(Json{{"point", point_json(q.point)}, {"index", q.index}});
    if (numeric) {
      rec["numeric"] = report_json(*numeric);
      rec["match"] = match;
    }
    Json summary{{"strict", form.strict}};
    if (numeric) summary["match"] = match;
    emit_document(out, c, Json::array({rec}), summary);
  }
  out.flush();
  if (!form.strict) throw NotGeneric("quadric is not generic: Takagi values are not distinct and positive");
  if (numeric && !match) return kExitSolverIncomplete;
  return kExitOk;
}

namespace {

struct GaussLucasTrial {
  std::optional<GaussLucasCertificate> cert;
  std::uint64_t seed = 0;
  int attempts = 0;
  std::string error;
};

bool hemisphere_feasible(const Section& s) {
  std::vector<SpherePoint> pts;
  for (const auto& z : binary_zeros(s)) pts.push_back(cp1_to_sphere(z.point));
  return hemisphere_witness(pts).has_value();
}

Json certificate_json(const GaussLucasCertificate& g) {
  Json j;
  j["zeros"] = zeros_json(g.zeros);
  j["P"] = polygon_json(g.P);
  j["P_inf"] = polygon_json(g.P_inf);
  j["criticals"] = Json::array();
  for (const auto& lc : g.criticals) {
    Json cj = critical_json(lc.critical);
    cj["sphere"] = sphere_json(cp1_to_sphere(lc.critical.point));
    cj["verdict"] = to_string(lc.verdict);
    j["criticals"].push_back(std::move(cj));
  }
  j["theorem_holds"] = g.theorem_holds;
  j["has_index2_in_P_inf"] = g.has_index2_in_Pinf;
  j["all_nondegenerate"] = g.all_nondegenerate;
  j["has_critical_in_P"] = g.has_critical_in_P ? Json(*g.has_critical_in_P) : Json(nullptr);
  j["P_criticals_interior"] = g.p_criticals_interior;
  j["P_inf_criticals_interior"] = g.pinf_criticals_interior;
  j["authoritative"] = g.authoritative;
  j["certification"] = Json{{"status", to_string(g.solve.certified.status)}, {"reason", g.solve.certified.reason}};
  return j;
}

}  // namespace

int cmd_gauss_lucas(const RunConfig& c, std::ostream& out) {
  if (c.input.empty() && c.n != 1) throw std::invalid_argument("gauss-lucas works on CP^1 (--n 1)");
  const bool single = !c.input.empty();
  const int trials = single ? 1 : c.trials;
  const SolveOptions opts = solve_options(c);
  std::vector<GaussLucasTrial> results(trials);

  if (single) {
    const Section s = load_section(c.input);
    results[0].cert = gauss_lucas_certify(s, opts);  // HemisphereViolation is an input error here
    results[0].attempts = 1;
  } else {
    if (c.m < 2) throw std::invalid_argument("gauss-lucas needs --m >= 2");
    parallel_for(trials, c.jobs, [&](int t) {
      GaussLucasTrial& r = results[t];
      const std::uint64_t base = trial_seed(c.seed, t);
      try {
        for (int a = 0; a < kMaxRejections; ++a) {
          r.seed = trial_seed(base, a);
          ++r.attempts;
          const Section s = random_section(1, c.m, r.seed);
          if (!hemisphere_feasible(s)) continue;
          r.cert = gauss_lucas_certify(s, opts);
          return;
        }
        r.error = "no hemisphere-feasible section within the rejection limit";
      } catch (const std::exception& e) {
        r.error = e.what();
      }
    });
  }

  long attempts = 0;
  int violations = 0, index2 = 0, non_authoritative = 0, errors = 0, nondeg_trials = 0, p_ok = 0;
  for (const auto& r : results) {
    attempts += r.attempts;
    if (!r.cert) {
      ++errors;
      continue;
    }
    if (!r.cert->theorem_holds) ++violations;
    if (r.cert->has_index2_in_Pinf) ++index2;
    if (!r.cert->authoritative) ++non_authoritative;
    if (r.cert->has_critical_in_P) {
      ++nondeg_trials;
      if (*r.cert->has_critical_in_P && r.cert->p_criticals_interior) ++p_ok;
    }
  }
  const double acceptance = static_cast<double>(trials - errors) / static_cast<double>(std::max(attempts, 1L));

  if (c.format == OutputFormat::Tabular) {
    out << "trial,seed,kind,verdict,index,x,y,z";
    point_header(out, 1);
    out << '\n';
    for (int t = 0; t < trials; ++t) {
      if (!results[t].cert) continue;
      const auto& g = *results[t].cert;
      for (const auto& z : g.zeros) {
        const auto x = cp1_to_sphere(z.point).xyz();
        out << t << ',' << results[t].seed << ",zero,," << ',' << num(x.x()) << ',' << num(x.y()) << ',' << num(x.z());
        point_columns(out, z.point);
        out << '\n';
      }
      for (const auto& lc : g.criticals) {
        const auto x = cp1_to_sphere(lc.critical.point).xyz();
        out << t << ',' << results[t].seed << ",critical," << to_string(lc.verdict) << ','
            << (lc.critical.index ? std::to_string(*lc.critical.index) : "") << ',' << num(x.x()) << ',' << num(x.y())
            << ',' << num(x.z());
        point_columns(out, lc.critical.point);
        out << '\n';
      }
    }
  } else {
    Json records = Json::array();
    for (int t = 0; t < trials; ++t) {
      Json r;
      r["trial"] = t;
      if (!single) {
        r["seed"] = results[t].seed;
        r["attempts"] = results[t].attempts;
      }
      if (results[t].cert) r["certificate"] = certificate_json(*results[t].cert);
      else r["error"] = results[t].error;
      records.push_back(std::move(r));
    }
    Json summary;
    summary["trials"] = trials;
    summary["violations"] = violations;
    summary["index2_in_P_inf"] = index2;
    summary["nondegenerate_trials"] = nondeg_trials;
    summary["nonempty_interior_P"] = p_ok;
    summary["non_authoritative"] = non_authoritative;
    summary["errors"] = errors;
    summary["sampling_attempts"] = attempts;
    summary["acceptance_rate"] = acceptance;
    emit_document(out, c, std::move(records), std::move(summary));
  }
  out.flush();
  if (violations > 0) return kExitViolation;
  if (errors > 0) return kExitInputError;
  return non_authoritative > 0 ? kExitSolverIncomplete : kExitOk;
}

int cmd_morse(const RunConfig& c, std::ostream& out) {
  const int n = c.n;
  std::optional<MorseSeries> m_series, p_series;
  std::optional<MorseCheck> check;
  std::vector<int> indices;
  if (n <= 3) {
    // Strict diagonal quadric a = (1, 2, ..., n+1); its zero variety is an
    // index-0 critical manifold.
    RVector diag(n + 1);
    for (int i = 0; i <= n; ++i) diag(i) = i + 1.0;
    const CMatrix matrix = diag.cast<Complex>().asDiagonal();
    for (const auto& q : quadric_critical_set(takagi(matrix))) indices.push_back(q.index);
    m_series = counting_series(indices, {{0, quadric_zero_locus_poincare(n)}});
    p_series = poincare_cpn(n);
    check = morse_inequality_check(*m_series, *p_series);
  } else if (n % 2 == 0) {
    throw std::invalid_argument("morse: the inequality pipeline covers n <= 3 and the Betti deduction odd n");
  }
  std::optional<std::int64_t> betti;
  if (n % 2 == 1) betti = quadric_middle_betti(n);

  if (c.format == OutputFormat::Tabular) {
    auto row = [&](const char* name, const std::vector<std::int64_t>& coeffs) {
      out << name;
      for (auto v : coeffs) out << ',' << v;
      out << '\n';
    };
    out << "quantity,coefficients\n";
    if (check) {
      row("M", m_series->coeffs());
      row("P", p_series->coeffs());
      row("R", check->raw_quotient.coeffs());
      out << "holds," << (check->holds ? 1 : 0) << '\n';
    }
    if (betti) out << "middle_betti," << *betti << '\n';
  } else {
    Json rec;
    rec["n"] = n;
    if (check) {
      rec["indices"] = indices;
      rec["M"] = m_series->coeffs();
      rec["P"] = p_series->coeffs();
      rec["R"] = check->raw_quotient.coeffs();
      rec["remainder"] = check->remainder;
      rec["holds"] = check->holds;
    }
    rec["middle_betti"] = betti ? Json(*betti) : Json(nullptr);
    Json summary;
    summary["holds"] = check ? Json(check->holds) : Json(nullptr);
    emit_document(out, c, Json::array({rec}), std::move(summary));
  }
  out.flush();
  return check && !check->holds ? kExitViolation : kExitOk;
}

int cmd_density(const RunConfig& c, std::ostream& out) {
  const int trials = c.trials;
  const int max_index = 2 * c.n;
  const SolveOptions opts = solve_options(c);
  std::vector<std::optional<SolveReport>> reports(trials);
  std::vector<std::string> errors(trials);
  parallel_for(trials, c.jobs, [&](int t) {
    try {
      reports[t] = find_critical_points(random_section(c.n, c.m, trial_seed(c.seed, t)), opts);
    } catch (const std::exception& e) {
      errors[t] = e.what();
    }
  });

  // counts[t][k] = number of index-k criticals in trial t.
  std::vector<std::vector<int>> counts(trials, std::vector<int>(max_index + 1, 0));
  std::vector<int> degenerate(trials, 0);
  int degenerate_trials = 0, incomplete = 0, failed = 0;
  for (int t = 0; t < trials; ++t) {
    if (!reports[t]) {
      ++failed;
      continue;
    }
    for (const auto& cp : reports[t]->criticals) {
      if (cp.index) ++counts[t][*cp.index];
      else ++degenerate[t];
    }
    if (degenerate[t] > 0) ++degenerate_trials;
    if (reports[t]->certified.status == CertificationStatus::Failed || reports[t]->max_starts_exceeded) ++incomplete;
  }

  const int ok = trials - failed;
  auto mean_se = [&](auto value_of) {
    double sum = 0.0, sum_sq = 0.0;
    for (int t = 0; t < trials; ++t) {
      if (!reports[t]) continue;
      const double v = value_of(t);
      sum += v;
      sum_sq += v * v;
    }
    const double mean = ok > 0 ? sum / ok : 0.0;
    const double var = ok > 1 ? (sum_sq - ok * mean * mean) / (ok - 1) : 0.0;
    return std::pair<double, double>{mean, ok > 0 ? std::sqrt(std::max(var, 0.0) / ok) : 0.0};
  };

  if (c.format == OutputFormat::Tabular) {
    out << "trial,seed";
    for (int k = 0; k <= max_index; ++k) out << ",index" << k;
    out << ",degenerate,certification\n";
    for (int t = 0; t < trials; ++t) {
      if (!reports[t]) continue;
      out << t << ',' << trial_seed(c.seed, t);
      for (int k = 0; k <= max_index; ++k) out << ',' << counts[t][k];
      out << ',' << degenerate[t] << ',' << to_string(reports[t]->certified.status) << '\n';
    }
  } else {
    Json records = Json::array();
    for (int t = 0; t < trials; ++t) {
      Json r;
      r["trial"] = t;
      r["seed"] = trial_seed(c.seed, t);
      if (!reports[t]) {
        r["error"] = errors[t];
      } else {
        r["counts"] = counts[t];
        r["degenerate"] = degenerate[t];
        if (degenerate[t] > 0) {
          r["anomaly"] = "critical point with degeneracy margin below threshold";
          Json margins = Json::array();
          for (const auto& cp : reports[t]->criticals)
            if (!cp.index) margins.push_back(cp.nondeg_margin);
          r["degenerate_margins"] = std::move(margins);
        }
        r["certification"] = to_string(reports[t]->certified.status);
      }
      records.push_back(std::move(r));
    }
    Json per_index = Json::array();
    for (int k = 0; k <= max_index; ++k) {
      std::map<int, int> hist;
      for (int t = 0; t < trials; ++t)
        if (reports[t]) ++hist[counts[t][k]];
      Json h = Json::object();
      for (const auto& [value, freq] : hist) h[std::to_string(value)] = freq;
      const auto [mean, se] = mean_se([&](int t) { return static_cast<double>(counts[t][k]); });
      per_index.push_back(Json{{"index", k}, {"mean", mean}, {"standard_error", se}, {"histogram", h}});
    }
    const auto [total_mean, total_se] = mean_se([&](int t) {
      int total = degenerate[t];
      for (int v : counts[t]) total += v;
      return static_cast<double>(total);
    });
    Json summary;
    summary["trials"] = trials;
    summary["per_index"] = std::move(per_index);
    summary["total_mean"] = total_mean;
    summary["total_standard_error"] = total_se;
    summary["degenerate_trials"] = degenerate_trials;
    summary["degenerate_fraction"] = ok > 0 ? static_cast<double>(degenerate_trials) / ok : 0.0;
    summary["incomplete"] = incomplete;
    summary["errors"] = failed;
    emit_document(out, c, std::move(records), std::move(summary));
  }
  out.flush();
  if (failed > 0) return kExitInputError;
  return incomplete > 0 ? kExitSolverIncomplete : kExitOk;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    validate(config);
    std::ofstream file;
    std::ostream* os = &out;
    if (!config.out.empty()) {
      file.open(config.out);
      if (!file) throw std::invalid_argument("cannot open output file '" + config.out + "'");
      os = &file;
    }
    const std::string& cmd = config.command;
    if (cmd == "sample") return cmd_sample(config, *os);
    if (cmd == "solve") return cmd_solve(config, *os);
    if (cmd == "quadric") return cmd_quadric(config, *os);
    if (cmd == "gauss-lucas") return cmd_gauss_lucas(config, *os);
    if (cmd == "morse") return cmd_morse(config, *os);
    if (cmd == "density") return cmd_density(config, *os);
    throw std::invalid_argument("unknown command '" + cmd + "'");
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitInputError;
}

}  // namespace fscrit::cli
