#include "ghor/verify.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <set>

#include "ghor/errors.hpp"

namespace ghor {

namespace {

struct Recorder {
  const std::string& instance;
  std::vector<CheckResult>& out;

  CheckResult& add(std::string name, Status s, std::string detail, nlohmann::json data = nlohmann::json::object()) {
    out.push_back({instance, std::move(name), s, std::move(detail), std::move(data)});
    return out.back();
  }
};

template <typename T>
std::string show(const T& v) {
  return nlohmann::json(v).dump();
}

// Compares a recomputed value with the expectation table entry, if any.
template <typename T>
Status against(const std::optional<T>& expected, const T& actual, std::string& detail) {
  if (!expected) return Status::Pass;
  if (*expected == actual) return Status::Pass;
  detail += "; expected " + show(*expected) + ", got " + show(actual);
  return Status::Fail;
}

Status worst(Status a, Status b) {
  if (a == Status::Fail || b == Status::Fail) return Status::Fail;
  if (a == Status::Inconclusive || b == Status::Inconclusive) return Status::Inconclusive;
  return Status::Pass;
}

}  // namespace

const char* status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Inconclusive: return "inconclusive";
  }
  return "?";
}

TauSufficiency check_tau_sufficiency(const DimerQuiver& q, const MatchingIndex& ix, int max_length) {
  TauSufficiency r;
  using Key = std::tuple<VertexId, VertexId, std::vector<int64_t>>;
  std::map<Key, std::map<std::vector<int64_t>, Path>> by_eta, by_tau;
  std::map<std::pair<VertexId, VertexId>, std::size_t> ends;
  std::vector<Path> frontier;
  for (VertexId v = 0; v < q.vertex_count(); ++v) frontier.push_back(trivial_path(v));
  for (int len = 0; len <= max_length; ++len) {
    std::vector<Path> next;
    for (const auto& p : frontier) {
      ++r.paths;
      VertexId h = path_head(q, p);
      ++ends[{p.start, h}];
      auto eta = eta_bar(q, ix, p).exps, tau = tau_bar(q, ix, p).exps;
      by_eta[{p.start, h, eta}].emplace(tau, p);
      by_tau[{p.start, h, tau}].emplace(eta, p);
      if (len == max_length) continue;
      for (ArrowId a : q.out_arrows(h)) {
        Path e = p;
        e.arrows.push_back(a);
        next.push_back(std::move(e));
      }
    }
    frontier = std::move(next);
  }
  for (auto [k, n] : ends) r.pairs += n * (n - 1) / 2;
  for (const auto* groups : {&by_eta, &by_tau})
    for (const auto& [k, m] : *groups)
      if (m.size() > 1) r.disagreements.emplace_back(m.begin()->second, std::next(m.begin())->second);
  return r;
}

FaceLabelLaw check_face_labels(const DimerQuiver& q, const MatchingIndex& ix) {
  FaceLabelLaw r;
  for (int f = 0; f < q.face_count(); ++f) {
    Path p = make_path(q, q.face(f));
    if (eta_bar(q, ix, p) != sigma_vector(Basis::Perfect, ix.perfect.size())) r.bad_eta.push_back(f);
    if (tau_bar(q, ix, p) != sigma_vector(Basis::Simple, ix.simple.size())) r.bad_tau.push_back(f);
  }
  return r;
}

std::vector<CheckResult> verify_instance(const SuiteEntry& e, const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  Recorder rec{e.name, out};
  const DimerQuiver& q = e.quiver;
  const Expectations& ex = e.expect;
  const int n = q.polygon().half_sides();

  ValidationReport v = validate(q);
  {
    std::string detail = v.ok() ? "all checks pass" : "";
    for (const auto& c : v.checks)
      if (!c.passed) detail += (detail.empty() ? "" : "; ") + c.name + ": " + c.detail;
    rec.add("validation", v.ok() ? Status::Pass : Status::Fail, detail, v.to_json());
    if (!v.ok()) return out;
  }

  std::optional<CycleTopology> topo;
  try {
    topo.emplace(q);
  } catch (const Error& err) {
    rec.add("embedding", Status::Fail, err.what());
    return out;
  }
  const CycleTopology& ct = *topo;
  const MatchingIndex& ix = ct.index();

  {
    std::string d = std::to_string(ix.perfect.size()) + " perfect matchings";
    Status s = ix.standing_assumption() ? Status::Pass : Status::Fail;
    if (!ix.standing_assumption()) d += "; some arrow lies in no perfect matching";
    s = worst(s, against(ex.perfect, static_cast<int>(ix.perfect.size()), d));
    rec.add("perfect matchings", s, d, {{"count", ix.perfect.size()}});
  }

  GeodesicOptions gopt;
  gopt.bound = opt.bound;
  gopt.reps.rewrite_depth = opt.rewrite_depth;
  GeodesicReport geo = ct.is_geodesic_algebra(gopt);
  {
    std::string d = geo.geodesic ? "witnesses in all " + std::to_string(2 * n) + " directions"
                                 : "no witness family within length " + std::to_string(geo.max_length);
    Status s = geo.geodesic ? Status::Pass : Status::Inconclusive;
    s = worst(s, against(ex.geodesic, geo.geodesic, d));
    rec.add("geodesic witnesses", s, d, geo.to_json(q));
  }

  {
    bool subset = true;
    for (std::size_t k = 0; k < ix.simple.size(); ++k)
      subset = subset && ix.perfect.at(ix.simple_in_perfect[k]) == ix.simple[k];
    for (const auto& m : ix.simple) subset = subset && is_simple(q, m) && is_perfect_matching(q, m);
    std::string d = std::to_string(ix.simple.size()) + " simple matchings";
    Status s = subset ? Status::Pass : Status::Fail;
    if (!subset) d += "; a simple matching is missing from the perfect list";
    if (geo.geodesic && !ix.simple_covers_arrows()) {
      s = Status::Fail;
      d += "; certified geodesic but some arrow lies in no simple matching";
    }
    s = worst(s, against(ex.simple, static_cast<int>(ix.simple.size()), d));
    rec.add("simple matchings", s, d, {{"count", ix.simple.size()}, {"covers_arrows", ix.simple_covers_arrows()}});
  }

  {
    FaceLabelLaw law = check_face_labels(q, ix);
    bool ok = law.bad_eta.empty() && law.bad_tau.empty();
    rec.add("unit cycle labels", ok ? Status::Pass : Status::Fail,
            ok ? "every face is labelled sigma over both bases" : "faces off sigma",
            {{"bad_eta", law.bad_eta}, {"bad_tau", law.bad_tau}});
  }

  {
    Status s = Status::Pass;
    std::string d;
    int gaps = 0;
    nlohmann::json data = nlohmann::json::array();
    for (const auto& w : geo.witnesses) {
      try {
        Subdivision sub = ct.subdivision_from_family(w.family);
        Matching m = ct.matching_from_subdivision(sub);
        bool simple = is_perfect_matching(q, m) && is_simple(q, m);
        if (!simple) s = Status::Fail;
        data.push_back({{"direction", w.k}, {"columns", sub.columns()}, {"pillars", sub.pillars()},
                        {"matching", to_string(q, m)}, {"simple", simple}});
      } catch (const ConstructionGap& gap) {
        s = worst(s, Status::Inconclusive);
        ++gaps;
        data.push_back({{"direction", w.k}, {"gap", gap.what()}});
      }
    }
    d = std::to_string(geo.witnesses.size() - gaps) + " of " + std::to_string(geo.witnesses.size()) +
        " witness families subdivide into a simple matching";
    if (gaps) d += ", " + std::to_string(gaps) + " construction gaps";
    if (geo.witnesses.empty()) s = Status::Inconclusive;
    rec.add("subdivision matchings", s, d, data);
  }

  {
    ClassLabelReport cl = ct.verify_class_label_theorem(opt.class_bound, geo.geodesic);
    std::string d = std::to_string(cl.cycles) + " cycles, " + std::to_string(cl.classes) + " classes, " +
                    std::to_string(cl.violations.size()) + " violations";
    Status s = cl.violations.empty() ? Status::Pass : (cl.conditional ? Status::Inconclusive : Status::Fail);
    if (cl.conditional) d += " (not certified geodesic: correspondence not expected)";
    if (cl.truncated) {
      s = worst(s, Status::Inconclusive);
      d += " (walk cap reached)";
    }
    rec.add("class-label correspondence", s, d, cl.to_json(q));
  }

  {
    TauSufficiency t = check_tau_sufficiency(q, ix, opt.tau_length);
    std::string d = std::to_string(t.pairs) + " coterminal pairs over " + std::to_string(t.paths) + " paths, " +
                    std::to_string(t.disagreements.size()) + " disagreements";
    Status s = t.disagreements.empty() ? Status::Pass : (geo.geodesic ? Status::Fail : Status::Inconclusive);
    nlohmann::json data = nlohmann::json::array();
    for (const auto& [a, b] : t.disagreements) data.push_back({to_string(q, a), to_string(q, b)});
    rec.add("tau sufficiency", s, d, data);
  }

  std::optional<CentralGeometry> cg;
  try {
    cg.emplace(ct);
  } catch (const Error& err) {
    rec.add("central geometry", Status::Fail, err.what());
    return out;
  }
  const int degree = opt.degree > 0 ? opt.degree : cg->default_degree();

  {
    std::vector<ExponentVector> gens;
    for (const auto& g : cg->cycle_algebra_generators()) gens.push_back(g.label);
    LatticeSummary s_rank = krull_dimension(gens);
    LatticeSummary r_rank = krull_dimension(cg->center_sample(degree).elements);
    nlohmann::json data{{"S", s_rank.to_json()}, {"R", r_rank.to_json()}, {"degree", degree}};
    std::string d = "rank S " + std::to_string(s_rank.rank) + ", rank R " + std::to_string(r_rank.rank);
    Status s = s_rank.rank == r_rank.rank ? Status::Pass : Status::Fail;
    std::optional<int> t_rank;
    try {
      TReport t = cg->t_subalgebra(geo.gammas);
      t_rank = t.lattice.rank;
      data["T"] = t.to_json();
      d += ", rank T " + std::to_string(*t_rank);
      if (*t_rank != s_rank.rank || !t.normalized()) s = Status::Fail;
    } catch (const PreconditionError& err) {
      d += ", T unavailable (" + std::string(err.what()) + ")";
      s = worst(s, Status::Inconclusive);
    }
    if (geo.geodesic && s_rank.rank != n + 1) {
      s = Status::Fail;
      d += "; certified geodesic but rank is not N+1 = " + std::to_string(n + 1);
    }
    s = worst(s, against(ex.dimension, s_rank.rank, d));
    rec.add("dimension", s, d, data);
  }

  DepictionReport dep = cg->depiction_report(degree, opt.nmax, geo.gammas);
  {
    const auto& a = dep.agreement;
    int worst_shift = 0;
    for (const auto& x : a.entries)
      if (x.center_shift) worst_shift = std::max(worst_shift, *x.center_shift);
    std::string d = a.all_in_center() ? "every cycle-algebra generator times sigma^m is central, m <= " +
                                            std::to_string(worst_shift)
                                      : "some generator needs more than sigma^" + std::to_string(a.max_shift);
    Status s = a.all_in_center() ? Status::Pass : Status::Fail;
    if (a.t_available && !a.all_in_t()) {
      s = Status::Fail;
      d += "; some generator is not a T-fraction";
    }
    rec.add("sigma-inverted agreement", s, d, a.to_json(q));
  }
  {
    std::string verdict = verdict_name(dep.noetherian.verdict);
    std::string d = verdict + " (nmax " + std::to_string(opt.nmax) + ")";
    if (dep.noetherian.witness)
      d += ", witness " + to_string(q, dep.noetherian.entries[*dep.noetherian.witness].generator.cycle);
    Status s = dep.noetherian.verdict == NoetherianVerdict::Inconclusive ? Status::Inconclusive : Status::Pass;
    s = worst(s, against(ex.noetherian, verdict, d));
    rec.add("noetherian centre", s, d, dep.noetherian.to_json(q));
  }
  {
    std::string d = dep.center_equals_cycle_algebra ? "R = S up to degree " + std::to_string(degree)
                                                    : "R and S differ by degree " + std::to_string(degree);
    Status s = against(ex.center_equals_cycle_algebra, dep.center_equals_cycle_algebra, d);
    rec.add("centre versus cycle algebra", s, d, dep.to_json(q));
  }
  return out;
}

bool SuiteReport::ok() const { return count(Status::Fail) == 0 && load_errors.empty(); }

std::size_t SuiteReport::count(Status s) const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [s](const CheckResult& c) { return c.status == s; }));
}

nlohmann::json SuiteReport::to_json() const {
  nlohmann::json j;
  auto row = [](const CheckResult& c) {
    return nlohmann::json{{"instance", c.instance}, {"check", c.name}, {"status", status_name(c.status)},
                          {"detail", c.detail}, {"data", c.data}};
  };
  j["checks"] = nlohmann::json::array();
  j["inconclusive"] = nlohmann::json::array();
  for (const auto& c : checks) {
    j["checks"].push_back(row(c));
    if (c.status == Status::Inconclusive) j["inconclusive"].push_back({{"instance", c.instance}, {"check", c.name}});
  }
  j["load_errors"] = nlohmann::json::array();
  for (const auto& [f, m] : load_errors) j["load_errors"].push_back({{"file", f}, {"error", m}});
  j["summary"] = {{"pass", count(Status::Pass)},
                  {"fail", count(Status::Fail)},
                  {"inconclusive", count(Status::Inconclusive)},
                  {"ok", ok()}};
  return j;
}

SuiteReport verify_suite(const LoadedSuite& suite, const VerifyOptions& opt) {
  std::vector<std::future<std::vector<CheckResult>>> jobs;
  for (const auto& e : suite.entries)
    jobs.push_back(std::async(std::launch::async, [&e, &opt] { return verify_instance(e, opt); }));
  SuiteReport r;
  r.load_errors = suite.errors;
  for (auto& j : jobs) {
    auto part = j.get();
    r.checks.insert(r.checks.end(), part.begin(), part.end());
  }
  return r;
}

}  // namespace ghor
