#include "gnewton/cli/report.hpp"

#include <set>

namespace gnewton::cli {

namespace {

json matrix_rows(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

json to_json(const RunReport& r) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = r.command;
  doc["config"] = r.config;
  json iters = json::array();
  for (const IterationRecord& rec : r.trace.records) {
    json it;
    it["iter"] = rec.iter;
    it["cost"] = rec.cost;
    it["grad_norm"] = rec.grad_norm;
    it["step_norm"] = rec.step_norm;
    it["distance"] = rec.distance ? json(*rec.distance) : json(nullptr);
    it["elapsed"] = rec.elapsed;
    iters.push_back(it);
  }
  doc["iterations"] = iters;
  doc["status"] = to_string(r.trace.status);
  doc["message"] = r.trace.message;

  json rate;
  if (r.rate) {
    rate["errors"] = r.rate->errors;
    rate["ratios"] = r.rate->ratios;
    rate["slope"] = r.rate->slope;
    rate["verdict"] = r.rate->quadratic;
  } else {
    rate["errors"] = json::array();
    rate["ratios"] = json::array();
    rate["slope"] = nullptr;
    rate["verdict"] = false;
  }
  rate["note"] = r.rate_note;
  doc["rate"] = rate;

  const Matrix& p = r.trace.final_projector;
  json fin;
  fin["trace"] = p.trace();
  fin["frobenius_norm"] = p.norm();
  fin["idempotence_residual"] = idempotence_residual(p);
  fin["extra_residuals"] = json::object();
  for (const auto& [k, v] : r.extra_residuals) fin["extra_residuals"][k] = v;
  fin["projector"] = matrix_rows(p);
  doc["final"] = fin;
  return doc;
}

std::vector<std::string> validate_report(const json& doc) {
  std::vector<std::string> bad;
  auto need = [&](const json& obj, const char* key, auto pred, const char* what) {
    if (!obj.is_object() || !obj.contains(key)) {
      bad.push_back(std::string("missing ") + key);
      return false;
    }
    if (!pred(obj.at(key))) {
      bad.push_back(std::string(key) + " is not " + what);
      return false;
    }
    return true;
  };
  auto is_num = [](const json& j) { return j.is_number(); };
  auto is_nonneg = [](const json& j) { return j.is_number() && j.get<double>() >= 0.0; };
  auto is_num_or_null = [](const json& j) { return j.is_number() || j.is_null(); };
  auto is_str = [](const json& j) { return j.is_string(); };
  auto is_obj = [](const json& j) { return j.is_object(); };
  auto is_arr = [](const json& j) { return j.is_array(); };

  if (!doc.is_object()) return {"document is not an object"};
  if (need(doc, "schema_version", is_str, "a string") && doc["schema_version"] != kSchemaVersion)
    bad.push_back("unsupported schema_version");
  static const std::set<std::string> commands = {"rayleigh-gr", "rayleigh-lg", "invariant"};
  if (need(doc, "command", is_str, "a string") && !commands.count(doc["command"].get<std::string>()))
    bad.push_back("unknown command");
  need(doc, "config", is_obj, "an object");
  static const std::set<std::string> statuses = {"Converged",        "MaxIters",        "SingularHessian",
                                                 "SingularOperator", "SpectralOverlap", "NoConvergence"};
  if (need(doc, "status", is_str, "a string") && !statuses.count(doc["status"].get<std::string>()))
    bad.push_back("unknown status");

  if (need(doc, "iterations", is_arr, "an array")) {
    int expect = 0;
    for (const json& it : doc["iterations"]) {
      if (!it.is_object()) {
        bad.push_back("iteration entry is not an object");
        continue;
      }
      if (need(it, "iter", [](const json& j) { return j.is_number_integer(); }, "an integer") &&
          it["iter"].get<int>() != expect)
        bad.push_back("iterations out of order");
      ++expect;
      need(it, "cost", is_num_or_null, "a number");
      need(it, "grad_norm", is_nonneg, "a non-negative number");
      need(it, "step_norm", is_nonneg, "a non-negative number");
      need(it, "distance", is_num_or_null, "a number or null");
      need(it, "elapsed", is_nonneg, "a non-negative number");
    }
  }

  if (need(doc, "rate", is_obj, "an object")) {
    const json& rate = doc["rate"];
    if (need(rate, "ratios", is_arr, "an array"))
      for (const json& x : rate["ratios"])
        if (!x.is_number()) bad.push_back("ratio is not a number");
    need(rate, "slope", is_num_or_null, "a number or null");
    need(rate, "verdict", [](const json& j) { return j.is_boolean(); }, "a boolean");
  }

  if (need(doc, "final", is_obj, "an object")) {
    const json& fin = doc["final"];
    need(fin, "trace", is_num, "a number");
    need(fin, "frobenius_norm", is_nonneg, "a non-negative number");
    need(fin, "idempotence_residual", is_nonneg, "a non-negative number");
    if (need(fin, "extra_residuals", is_obj, "an object"))
      for (const auto& [k, v] : fin["extra_residuals"].items())
        if (!v.is_number()) bad.push_back("extra residual " + k + " is not a number");
    if (need(fin, "projector", is_arr, "an array")) {
      const size_t n = fin["projector"].size();
      for (const json& row : fin["projector"])
        if (!row.is_array() || row.size() != n) bad.push_back("projector is not square");
    }
  }
  return bad;
}

json without_timing(json doc) {
  if (doc.contains("iterations"))
    for (json& it : doc["iterations"]) it.erase("elapsed");
  return doc;
}

}  // namespace gnewton::cli
