#include "difem/study.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>

namespace difem {
namespace {

namespace fs = std::filesystem;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

std::string opt_fmt(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }

void atomic_write(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + tmp.string());
    out << content;
    if (!out) throw std::runtime_error("write failure on " + tmp.string());
  }
  fs::rename(tmp, path);
}

// (experiment, p, normal source, variable source) identifies one curve
using GroupKey = std::tuple<int, int, std::string, std::string>;

std::map<GroupKey, std::vector<const ExperimentRecord*>> group_records(
    const std::vector<ExperimentRecord>& records) {
  std::map<GroupKey, std::vector<const ExperimentRecord*>> groups;
  for (const auto& r : records)
    groups[{static_cast<int>(r.experiment), r.relation_p, r.normal_source, r.variable_source}]
        .push_back(&r);
  return groups;
}

struct ErrorKind {
  const char* name;
  std::optional<double> ErrorReport::* member;
};

constexpr ErrorKind kKinds[] = {
    {"err_rho", &ErrorReport::rho}, {"err_phi", &ErrorReport::phi},
    {"err_nu_A", &ErrorReport::nu_A}, {"err_nu_B", &ErrorReport::nu_B},
    {"err_u", &ErrorReport::u},     {"err_un", &ErrorReport::un},
};

std::string csv_text(const std::vector<ExperimentRecord>& records) {
  std::string out =
      "experiment,relation_p,h,epsilon,normal_source,variable_source,"
      "err_rho,err_phi,err_nu_A,err_nu_B,err_u,err_un,dofs,iterations,seconds\n";
  for (const auto& r : records) {
    out += experiment_name(r.experiment);
    out += ',' + std::to_string(r.relation_p) + ',' + fmt(r.h) + ',' + fmt(r.epsilon) + ',' +
           r.normal_source + ',' + r.variable_source;
    for (const auto& kind : kKinds) out += ',' + opt_fmt(r.errors.*kind.member);
    out += ',' + std::to_string(r.dofs) + ',' + std::to_string(r.iterations) + ',' +
           fmt(r.seconds) + '\n';
  }
  return out;
}

std::string json_text(const std::vector<ExperimentRecord>& records) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : records) {
    nlohmann::json j{{"experiment", experiment_name(r.experiment)},
                     {"relation_p", r.relation_p},
                     {"h", r.h},
                     {"epsilon", r.epsilon},
                     {"normal_source", r.normal_source},
                     {"variable_source", r.variable_source},
                     {"dofs", r.dofs},
                     {"iterations", r.iterations},
                     {"seconds", r.seconds}};
    for (const auto& kind : kKinds) {
      const auto& v = r.errors.*kind.member;
      if (v) j[kind.name] = *v;
    }
    arr.push_back(std::move(j));
  }
  return nlohmann::json{{"records", std::move(arr)}}.dump(2) + "\n";
}

std::string dat_text(const std::vector<const ExperimentRecord*>& recs) {
  std::string out = "# h epsilon err_rho err_phi err_nu_A err_nu_B err_u err_un\n";
  for (const auto* r : recs) {
    out += fmt(r->h) + ' ' + fmt(r->epsilon);
    for (const auto& kind : kKinds) {
      const auto& v = r->errors.*kind.member;
      out += ' ' + (v ? fmt(*v) : std::string("nan"));
    }
    out += '\n';
  }
  return out;
}

std::string summary_text(const std::map<GroupKey, std::vector<const ExperimentRecord*>>& groups) {
  std::string out =
      "observed convergence orders (least-squares slope of log err vs log scale)\n"
      "'fit' uses all ladder levels, 'fit*' drops the coarsest; 'last' is the\n"
      "finest consecutive-pair order\n\n";
  char line[256];
  std::snprintf(line, sizeof line, "%-4s %-3s %-9s %-17s %-9s  %7s %7s %7s  %7s %7s\n",
                "exp", "p", "normals", "variables", "error", "fit_eps", "fit*eps", "last_ep",
                "fit_h", "fit*_h");
  out += line;
  for (const auto& [key, recs] : groups) {
    const auto& [exp, p, ns, vs] = key;
    for (const auto& kind : kKinds) {
      std::vector<std::pair<double, double>> vs_eps, vs_h;
      for (const auto* r : recs) {
        const auto& v = r->errors.*kind.member;
        if (v && *v > 0.0) {
          vs_eps.push_back({r->epsilon, *v});
          vs_h.push_back({r->h, *v});
        }
      }
      if (vs_eps.size() < 3) continue;
      const OrderFit fe = observed_order(vs_eps);
      const OrderFit fh = observed_order(vs_h);
      const auto drop_first = [](std::vector<std::pair<double, double>> v) {
        v.erase(v.begin());
        return v;
      };
      const double fe_star =
          vs_eps.size() >= 4 ? observed_order(drop_first(vs_eps)).slope : fe.slope;
      const double fh_star = vs_h.size() >= 4 ? observed_order(drop_first(vs_h)).slope : fh.slope;
      std::snprintf(line, sizeof line,
                    "%-4s %-3d %-9s %-17s %-9s  %7.3f %7.3f %7.3f  %7.3f %7.3f\n",
                    experiment_name(static_cast<ExperimentId>(exp)), p, ns.c_str(), vs.c_str(),
                    kind.name, fe.slope, fe_star, fe.pair_orders.back(), fh.slope, fh_star);
      out += line;
    }
  }
  return out;
}

}  // namespace

void emit_report(const std::vector<ExperimentRecord>& records, const std::string& outdir) {
  if (records.empty()) throw std::invalid_argument("emit_report: no records");
  fs::create_directories(outdir);
  const fs::path dir(outdir);

  atomic_write(dir / "results.csv", csv_text(records));
  atomic_write(dir / "results.json", json_text(records));

  const auto groups = group_records(records);
  for (const auto& [key, recs] : groups) {
    const auto& [exp, p, ns, vs] = key;
    std::string name = std::string("fig_") + experiment_name(static_cast<ExperimentId>(exp)) +
                       "_p" + std::to_string(p);
    if (ns != "-") name += "_" + ns;
    name += "_" + vs + ".dat";
    atomic_write(dir / name, dat_text(recs));
  }
  atomic_write(dir / "summary.txt", summary_text(groups));
}

}  // namespace difem
