#include "latmass/report.hpp"

#include <map>
#include <set>
#include <sstream>

#include "latmass/known_results.hpp"

namespace latmass {

using nlohmann::json;

namespace {

json opt_rational(const std::optional<Rational>& r) { return r ? json(r->str()) : json(nullptr); }

std::optional<Rational> read_opt_rational(const json& j) {
  if (j.is_null()) return std::nullopt;
  return Rational::parse(j.get<std::string>());
}

json class_to_json(const ClassRecord& c) {
  return {
      {"subset", c.subset},
      {"e_prime", c.e_prime},
      {"d_e", c.d_e},
      {"norm", c.norm},
      {"comp_det", c.comp_det},
      {"multiplicity", c.multiplicity},
      {"max_conjugates", c.max_conjugates},
      {"exists", c.exists},
      {"reasons", c.reasons},
      {"volume", opt_rational(c.volume)},
      {"exactness", c.exactness ? json(*c.exactness) : json(nullptr)},
      {"max_volume", c.max_volume.str()},
  };
}

ClassRecord class_from_json(const json& j) {
  ClassRecord c;
  c.subset = j.at("subset").get<std::vector<std::int64_t>>();
  c.e_prime = j.at("e_prime").get<std::int64_t>();
  c.d_e = j.at("d_e").get<std::int64_t>();
  c.norm = j.at("norm").get<std::int64_t>();
  c.comp_det = j.at("comp_det").get<std::int64_t>();
  c.multiplicity = j.at("multiplicity").get<int>();
  c.max_conjugates = j.at("max_conjugates").get<int>();
  c.exists = j.at("exists").get<bool>();
  c.reasons = j.at("reasons").get<std::vector<std::string>>();
  c.volume = read_opt_rational(j.at("volume"));
  if (!j.at("exactness").is_null()) c.exactness = j.at("exactness").get<std::string>();
  c.max_volume = Rational::parse(j.at("max_volume").get<std::string>());
  return c;
}

json annotation_to_json(const Annotation& a) {
  return {{"d", a.d},           {"D", a.D},         {"status", a.status},
          {"source", a.source}, {"note", a.note},   {"provenance", a.provenance}};
}

Annotation annotation_from_json(const json& j, const std::string& default_provenance = {}) {
  Annotation a;
  a.d = j.at("d").get<std::int64_t>();
  a.D = j.at("D").get<std::int64_t>();
  a.status = j.at("status").get<std::string>();
  a.source = j.at("source").get<std::string>();
  a.note = j.at("note").get<std::string>();
  a.provenance = j.contains("provenance") ? j.at("provenance").get<std::string>() : default_provenance;
  return a;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

const std::vector<Annotation>& known_results() {
  static const std::vector<Annotation> table = [] {
    const json j = json::parse(detail::kKnownResultsJson);
    const std::string provenance = j.at("provenance").get<std::string>();
    std::vector<Annotation> out;
    for (const auto& e : j.at("entries")) out.push_back(annotation_from_json(e, provenance));
    return out;
  }();
  return table;
}

std::vector<Annotation> annotations_for(std::int64_t d) {
  std::vector<Annotation> out;
  for (const auto& a : known_results()) {
    if (a.d == d) out.push_back(a);
  }
  return out;
}

ReportRecord make_record(const Verdict& v) {
  ReportRecord r;
  r.d = v.spec.d;
  r.D = v.spec.D;
  r.residue = v.spec.residue;
  r.mode = to_string(v.mode);
  r.outcome = to_string(v.outcome);
  r.K = v.K;
  r.k_integer = v.k_integer;
  r.k_even = v.k_even;
  if (v.k_at_most) r.k_at_most = static_cast<std::int64_t>(*v.k_at_most);
  r.lhs_unit = v.lhs_unit;
  r.lhs_bound_coeff = v.lhs_bound.coeff;
  r.lhs_bound_radicand = v.lhs_bound.radicand;
  r.rhs = v.rhs.value;
  r.rhs_exactness = to_string(v.rhs.exactness);
  r.class_volume_sum = v.class_volume_sum;
  r.witness = v.witness;
  r.ldata = {v.ldata.B2chi, v.ldata.q, v.ldata.zetaKm1, render_lvalue(v.ldata)};
  for (const auto& t : v.terms) {
    ClassRecord c;
    c.subset = t.cls.subset;
    c.e_prime = t.cls.e_prime;
    c.d_e = t.cls.d_e;
    c.norm = t.cls.norm;
    c.comp_det = t.cls.comp_det;
    c.multiplicity = t.cls.multiplicity;
    c.max_conjugates = t.cls.max_conjugates;
    c.exists = t.cls.exists();
    for (const auto& reason : t.cls.existence.reasons) c.reasons.push_back(reason.detail);
    if (t.volume) {
      c.volume = t.volume->value;
      c.exactness = to_string(t.volume->exactness);
    }
    c.max_volume = t.max_volume;
    r.classes.push_back(std::move(c));
  }
  r.annotations = annotations_for(v.spec.d);
  return r;
}

void to_json(json& j, const ReportRecord& r) {
  json classes = json::array();
  for (const auto& c : r.classes) classes.push_back(class_to_json(c));
  json annotations = json::array();
  for (const auto& a : r.annotations) annotations.push_back(annotation_to_json(a));
  j = json{
      {"d", r.d},
      {"D", r.D},
      {"residue", r.residue},
      {"mode", r.mode},
      {"outcome", r.outcome},
      {"K", r.K.str()},
      {"k_integer", r.k_integer},
      {"k_even", r.k_even},
      {"k_at_most", r.k_at_most ? json(*r.k_at_most) : json(nullptr)},
      {"lhs", {{"vol_OL", r.lhs_unit.str()},
               {"lower_bound", {{"coeff", r.lhs_bound_coeff.str()}, {"radicand", r.lhs_bound_radicand}}}}},
      {"rhs", {{"value", r.rhs.str()}, {"exactness", r.rhs_exactness}, {"class_volume_sum", r.class_volume_sum.str()}}},
      {"witness", r.witness},
      {"ldata", {{"B2chi", r.ldata.B2chi.str()},
                 {"q", r.ldata.q.str()},
                 {"zetaKm1", r.ldata.zetaKm1.str()},
                 {"lvalue", r.ldata.lvalue}}},
      {"classes", classes},
      {"annotations", annotations},
  };
}

void from_json(const json& j, ReportRecord& r) {
  r.d = j.at("d").get<std::int64_t>();
  r.D = j.at("D").get<std::int64_t>();
  r.residue = j.at("residue").get<int>();
  r.mode = j.at("mode").get<std::string>();
  r.outcome = j.at("outcome").get<std::string>();
  r.K = Rational::parse(j.at("K").get<std::string>());
  r.k_integer = j.at("k_integer").get<bool>();
  r.k_even = j.at("k_even").get<bool>();
  r.k_at_most = j.at("k_at_most").is_null() ? std::nullopt : std::optional(j.at("k_at_most").get<std::int64_t>());
  const auto& lhs = j.at("lhs");
  r.lhs_unit = Rational::parse(lhs.at("vol_OL").get<std::string>());
  r.lhs_bound_coeff = Rational::parse(lhs.at("lower_bound").at("coeff").get<std::string>());
  r.lhs_bound_radicand = lhs.at("lower_bound").at("radicand").get<std::int64_t>();
  const auto& rhs = j.at("rhs");
  r.rhs = Rational::parse(rhs.at("value").get<std::string>());
  r.rhs_exactness = rhs.at("exactness").get<std::string>();
  r.class_volume_sum = Rational::parse(rhs.at("class_volume_sum").get<std::string>());
  r.witness = j.at("witness").get<std::string>();
  const auto& l = j.at("ldata");
  r.ldata = {Rational::parse(l.at("B2chi").get<std::string>()), Rational::parse(l.at("q").get<std::string>()),
             Rational::parse(l.at("zetaKm1").get<std::string>()), l.at("lvalue").get<std::string>()};
  r.classes.clear();
  for (const auto& c : j.at("classes")) r.classes.push_back(class_from_json(c));
  r.annotations.clear();
  for (const auto& a : j.at("annotations")) r.annotations.push_back(annotation_from_json(a));
}

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols = {
      "d",   "D",   "residue",       "mode",             "outcome",       "K",
      "k_integer", "k_even", "k_at_most", "vol_OL", "rhs", "rhs_exactness",
      "class_volume_sum", "zeta_K_minus1", "existing_classes", "annotation_status",
  };
  return cols;
}

std::string csv_header() {
  std::string out;
  for (const auto& c : csv_columns()) {
    if (!out.empty()) out += ',';
    out += c;
  }
  return out;
}

std::string csv_row(const ReportRecord& r) {
  std::size_t existing = 0;
  for (const auto& c : r.classes) existing += c.exists ? 1 : 0;
  std::string status;
  for (const auto& a : r.annotations) status += (status.empty() ? "" : ";") + a.status;
  const std::vector<std::string> fields = {
      std::to_string(r.d),
      std::to_string(r.D),
      std::to_string(r.residue),
      r.mode,
      r.outcome,
      r.K.str(),
      r.k_integer ? "true" : "false",
      r.k_even ? "true" : "false",
      r.k_at_most ? std::to_string(*r.k_at_most) : "",
      r.lhs_unit.str(),
      r.rhs.str(),
      r.rhs_exactness,
      r.class_volume_sum.str(),
      r.ldata.zetaKm1.str(),
      std::to_string(existing),
      status,
  };
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += csv_escape(fields[i]);
  }
  return out;
}

std::string survivor_summary(const std::vector<ReportRecord>& records) {
  std::map<int, std::set<std::int64_t>> by_residue{{1, {}}, {2, {}}, {3, {}}};
  std::set<std::int64_t> all;
  for (const auto& r : records) {
    if (!r.feasible()) continue;
    by_residue[r.residue].insert(r.d);
    all.insert(r.d);
  }
  auto fmt = [](const std::set<std::int64_t>& s) {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (auto d : s) {
      os << (first ? "" : ", ") << d;
      first = false;
    }
    os << '}';
    return os.str();
  };
  std::ostringstream os;
  os << "survivors:";
  for (const auto& [res, s] : by_residue) os << " residue " << res << ' ' << fmt(s) << ';';
  os << " all " << fmt(all);
  return os.str();
}

}  // namespace latmass
