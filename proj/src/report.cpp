#include "twnorm/report.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "twnorm/linalg.hpp"
#include "twnorm/parabolic.hpp"

namespace twnorm {

using nlohmann::json;

namespace {

json checks_json(const std::vector<Check>& checks) {
  json out = json::array();
  for (const Check& c : checks) out.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
  return out;
}

bool all_ok(const json& checks) {
  for (const json& c : checks)
    if (!c.at("ok").get<bool>()) return false;
  return true;
}

std::size_t require_dim(const std::optional<std::size_t>& v, const char* flag) {
  if (!v) fail(ErrorKind::InvalidArgument, std::string("missing --") + flag);
  return *v;
}

const std::string& require_text(const std::string& v, const char* flag) {
  if (v.empty()) fail(ErrorKind::InvalidArgument, std::string("missing --") + flag);
  return v;
}

const Field& field_of(const std::string& text) { return Field::make(FieldSpec::parse(text)); }

// Shapes of X and Y must agree with --n and --m when those are given.
Pair parse_pair(const Command& cmd, const Field& f) {
  Mat x = Mat::parse(f, require_text(cmd.x, "x"));
  Mat y = Mat::parse(f, require_text(cmd.y, "y"));
  if (cmd.n && x.rows() != *cmd.n) fail(ErrorKind::ShapeMismatch, "X has " + std::to_string(x.rows()) + " rows");
  if (cmd.m && x.cols() != 2 * *cmd.m + 1)
    fail(ErrorKind::ShapeMismatch, "X has " + std::to_string(x.cols()) + " columns");
  return make_pair(x, y);
}

json run_solve(const Command& cmd, const Field& f, json& checks) {
  std::size_t n = require_dim(cmd.n, "n"), m = require_dim(cmd.m, "m");
  Mat h = Mat::parse(f, require_text(cmd.h, "h"));
  NormCertificate cert = section_solve(h, n, m);
  json c = certificate_json(cert);
  checks = c.at("checks");
  c.erase("checks");
  return c;
}

json run_norm(const Command& cmd, const Field& f, json& checks) {
  Pair p = parse_pair(cmd, f);
  Mat z = (p.n % 2 == 0 ? f.one() : -f.one()) *
          (Mat::identity(f, 2 * p.m + 1) - x_prime(p.x, p.n, p.m) * inverse(p.y) * p.x);
  Membership mem = so_membership(z, p.m);
  std::vector<Check> list{{"norm_in_so", mem.member, mem.member ? "" : "fails orthogonality or det"}};
  for (Check& c : pair_identities(p))
    if (c.name != "norm_in_so") list.push_back(std::move(c));
  checks = checks_json(list);
  return {{"n", p.n}, {"m", p.m}, {"norm", z.to_string()}, {"in_so", mem.member}};
}

json run_factor(const Command& cmd, const Field& f, json& checks) {
  Mat x = Mat::parse(f, require_text(cmd.x, "x"));
  Mat y = Mat::parse(f, require_text(cmd.y, "y"));
  NPoint u = n_make(x, y);
  BruhatFactorization b = bruhat_factor(u);
  Mat w = w0(f, u.n, u.m);
  std::size_t k = 2 * u.m + 1;
  bool product = b.p_part * b.nbar_part == inverse(w) * n_matrix(u);
  bool middle = so_membership(b.p_part.block(u.n, u.n, k, k), u.m).member;
  checks = checks_json({{"product_exact", product, ""}, {"middle_in_so", middle, ""}});
  return {{"n", u.n}, {"m", u.m}, {"w0", w.to_string()}, {"p_part", b.p_part.to_string()},
          {"nbar_part", b.nbar_part.to_string()}};
}

json run_verify(const Command& cmd, json& checks) {
  SuiteConfig cfg;
  cfg.seed = cmd.seed;
  cfg.budget = cmd.budget;
  if (!cmd.field.empty()) {
    std::stringstream ss(cmd.field);
    for (std::string item; std::getline(ss, item, ',');) cfg.fields.push_back(item);
  }
  SuiteReport rep = run_suite(require_text(cmd.suite, "suite"), cfg);
  json s = suite_json(rep);
  checks = s.at("claims");
  s.erase("claims");
  return s;
}

json class_json(const ClassTable& t) {
  json classes = json::array();
  for (const ClassInfo& c : t.classes) {
    json row = {{"rep", c.rep.to_string()}, {"size", c.size}, {"semisimple", c.semisimple}, {"regular", c.regular}};
    if (t.tag == GroupTag::GL) {
      row["strongly_regular"] = c.strongly_regular;
      row["solvable"] = c.solvable;
    }
    classes.push_back(row);
  }
  return {{"group", to_string(t.tag)}, {"dim", t.dim}, {"group_order", t.group_order}, {"classes", classes},
          {"records", table_records(t)}};
}

json run_enumerate(const Command& cmd, const Field& f, json& checks) {
  std::size_t m = require_dim(cmd.m, "m");
  if (!cmd.n) {
    ClassTable t = so_class_table(f, m, cmd.budget);
    std::uint64_t total = 0;
    for (const ClassInfo& c : t.classes) total += c.size;
    checks = checks_json({{"sizes_sum_to_order", total == t.group_order, ""}});
    return {{"so", class_json(t)}};
  }
  FiberReport fr = norm_fiber_table(f, *cmd.n, m, cmd.budget);
  json mapping = json::array();
  bool single = true;
  for (const FiberEntry& e : fr.mapping) {
    mapping.push_back({{"twisted_class", e.twisted_class}, {"norm_classes", e.norm_classes}, {"solutions", e.solutions}});
    const ClassInfo& c = fr.twisted.classes[e.twisted_class];
    if (c.semisimple && c.regular && e.norm_classes.size() != 1) single = false;
  }
  json hist = json::object();
  for (auto [size, count] : fr.histogram) hist[std::to_string(size)] = count;
  std::uint64_t gl = 0, so = 0;
  for (const ClassInfo& c : fr.twisted.classes) gl += c.size;
  for (const ClassInfo& c : fr.so.classes) so += c.size;
  checks = checks_json({{"twisted_sizes_sum_to_order", gl == fr.twisted.group_order, ""},
                        {"so_sizes_sum_to_order", so == fr.so.group_order, ""},
                        {"regular_classes_map_to_one_class", single, ""}});
  return {{"twisted", class_json(fr.twisted)}, {"so", class_json(fr.so)}, {"mapping", mapping},
          {"histogram", hist}, {"exhaustive_x", fr.exhaustive_x}};
}

json run_report(const Command& cmd, json& checks, std::string& field) {
  std::ifstream in(require_text(cmd.input, "input"));
  if (!in) fail(ErrorKind::IoError, "cannot read " + cmd.input);
  json prior;
  try {
    prior = json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorKind::ParseError, e.what());
  }
  std::string why;
  if (!validate_schema(prior, &why)) fail(ErrorKind::ParseError, "not a schema 1 document: " + why);
  checks = prior.at("checks");
  field = prior.at("field").get<std::string>();
  return {{"digest", render(prior, Format::Text)}, {"source_command", prior.at("command")}};
}

json inputs_of(const Command& cmd) {
  json in = json::object();
  if (cmd.n) in["n"] = *cmd.n;
  if (cmd.m) in["m"] = *cmd.m;
  if (!cmd.h.empty()) in["h"] = cmd.h;
  if (!cmd.x.empty()) in["x"] = cmd.x;
  if (!cmd.y.empty()) in["y"] = cmd.y;
  if (!cmd.suite.empty()) in["suite"] = cmd.suite;
  if (!cmd.input.empty()) in["input"] = cmd.input;
  in["seed"] = cmd.seed;
  in["budget"] = cmd.budget;
  return in;
}

std::string scalar_text(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

}  // namespace

std::vector<std::string> verbs() { return {"solve", "norm", "factor", "verify", "enumerate", "report"}; }

json certificate_json(const NormCertificate& cert) {
  json c = {{"target", cert.target.to_string()},
            {"route", to_string(cert.route)},
            {"n", cert.pair.n},
            {"m", cert.pair.m},
            {"x", cert.pair.x.to_string()},
            {"y", cert.pair.y.to_string()},
            {"norm", cert.norm.to_string()},
            {"field", cert.pair.x.field().name()},
            {"checks", checks_json(cert.checks)}};
  c["conjugator"] = cert.conjugator ? json(cert.conjugator->to_string()) : json(nullptr);
  return c;
}

json suite_json(const SuiteReport& rep) {
  json claims = json::array();
  for (const Claim& c : rep.claims)
    claims.push_back({{"name", c.name},
                      {"ok", c.passed},
                      {"checked", c.checked},
                      {"detail", c.detail},
                      {"counterexample", c.counterexample}});
  return {{"suite", rep.name}, {"passed", rep.passed()}, {"notes", rep.notes}, {"claims", claims}};
}

std::vector<std::string> table_records(const ClassTable& t) {
  std::vector<std::string> out;
  for (const ClassInfo& c : t.classes) {
    std::string flags;
    auto add = [&](bool on, const char* name) {
      if (!on) return;
      if (!flags.empty()) flags += ',';
      flags += name;
    };
    add(c.semisimple, "semisimple");
    add(c.regular, "regular");
    if (t.tag == GroupTag::GL) {
      add(c.strongly_regular, "strongly_regular");
      add(c.solvable, "solvable");
    }
    out.push_back(c.rep.to_string() + "|" + std::to_string(c.size) + "|" + flags);
  }
  return out;
}

bool validate_schema(const json& doc, std::string* why) {
  auto bad = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (!doc.is_object()) return bad("not an object");
  for (const char* key : {"schema", "command", "field", "inputs", "results", "checks", "timing"})
    if (!doc.contains(key)) return bad(std::string("missing ") + key);
  if (doc["schema"] != kSchemaVersion) return bad("schema version");
  if (!doc["command"].is_string() || !doc["field"].is_string()) return bad("command or field not a string");
  if (!doc["inputs"].is_object() || !doc["timing"].is_object()) return bad("inputs or timing not an object");
  if (!doc["results"].is_object() && !doc["results"].is_null()) return bad("results");
  if (!doc["checks"].is_array()) return bad("checks not an array");
  for (const json& c : doc["checks"])
    if (!c.is_object() || !c.contains("name") || !c.contains("ok") || !c["ok"].is_boolean())
      return bad("malformed check");
  if (doc.contains("error")) {
    const json& e = doc["error"];
    if (!e.is_object() || !e.contains("kind") || !e.contains("code") || !e.contains("message")) return bad("error");
  }
  return true;
}

RunResult run(const Command& cmd) {
  json doc = {{"schema", kSchemaVersion}, {"command", cmd.verb}, {"field", cmd.field}, {"inputs", inputs_of(cmd)},
              {"results", nullptr},       {"checks", json::array()}};
  RunResult res;
  try {
    json checks = json::array();
    json results;
    std::string field_name = cmd.field;
    if (cmd.verb == "solve" || cmd.verb == "norm" || cmd.verb == "factor" || cmd.verb == "enumerate") {
      const Field& f = field_of(cmd.field.empty() ? "F5" : cmd.field);
      field_name = f.name();
      if (cmd.verb == "solve") results = run_solve(cmd, f, checks);
      else if (cmd.verb == "norm") results = run_norm(cmd, f, checks);
      else if (cmd.verb == "factor") results = run_factor(cmd, f, checks);
      else results = run_enumerate(cmd, f, checks);
    } else if (cmd.verb == "verify") {
      results = run_verify(cmd, checks);
    } else if (cmd.verb == "report") {
      results = run_report(cmd, checks, field_name);
    } else {
      fail(ErrorKind::InvalidArgument, "unknown command '" + cmd.verb + "'");
    }
    doc["field"] = field_name;
    doc["results"] = results;
    doc["checks"] = checks;
    res.exit_code = all_ok(checks) ? 0 : 1;
  } catch (const Error& e) {
    doc["error"] = {{"kind", to_string(e.kind())}, {"code", static_cast<int>(e.kind())}, {"message", e.what()}};
    res.exit_code = static_cast<int>(e.kind());
  }
  // Work counts instead of wall-clock time keep documents reproducible.
  std::uint64_t work = 0;
  for (const json& c : doc["checks"]) work += c.contains("checked") ? c["checked"].get<std::uint64_t>() : 1;
  doc["timing"] = {{"wall_clock", false}, {"checks_evaluated", work}};
  res.doc = std::move(doc);
  return res;
}

std::string render(const json& doc, Format format) {
  if (format == Format::Structured) return doc.dump(2) + "\n";
  std::ostringstream out;
  out << "command: " << scalar_text(doc.value("command", json(""))) << "\n";
  out << "field: " << scalar_text(doc.value("field", json(""))) << "\n";
  if (doc.contains("error")) {
    const json& e = doc["error"];
    out << "error: " << scalar_text(e["kind"]) << " (" << e["code"].dump() << "): " << scalar_text(e["message"]) << "\n";
  }
  if (doc.contains("results") && doc["results"].is_object())
    for (const auto& [k, v] : doc["results"].items())
      if (v.is_primitive()) out << k << ": " << scalar_text(v) << "\n";
  if (doc.contains("checks"))
    for (const json& c : doc["checks"]) {
      out << (c.value("ok", false) ? "✓ " : "✗ ") << c.value("name", std::string());
      std::string detail = c.value("detail", std::string());
      if (!detail.empty()) out << ": " << detail;
      out << "\n";
    }
  return out.str();
}

void emit_report(const json& doc, Format format, const std::string& path) {
  std::string text = render(doc, format);
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::IoError, "cannot write " + path);
  out << text;
  out.flush();
  if (!out) fail(ErrorKind::IoError, "write failed for " + path);
}

}  // namespace twnorm
