// klein-parallelisms: build, verify and classify pencilled parallelisms.
//
// Exit codes: 0 all checks pass, 1 some check failed, 2 input error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "kp/error.hpp"
#include "kp/flocks.hpp"
#include "kp/serialize.hpp"

using namespace kp;

namespace {

struct Options {
  std::string field = "Q";
  std::uint64_t seed = 42;
  std::size_t samples = 200;
  bool json = false;
  std::string in;
  std::string out;
  std::string save;
  std::string a = "-1";
  std::string b = "-1";
  std::string side = "left";
  bool auto_second = false;
  std::size_t exceptions = 3;
  bool skip_validate = false;
  std::string what = "all";
};

class Report {
 public:
  explicit Report(Json config) : config_(std::move(config)) {}

  void add(const std::string& check, const std::string& status, Json details = Json::object()) {
    results_.push_back(Json{{"check", check}, {"status", status}, {"details", std::move(details)}});
    ++tally_[status];
  }
  void pass_if(const std::string& check, bool ok, Json details = Json::object()) {
    add(check, ok ? "pass" : "fail", std::move(details));
  }
  void count(const std::string& key, std::uint64_t n) { extra_[key] = n; }
  bool failed() const { return tally_.contains("fail"); }

  Json json() const {
    Json counts = Json::object();
    for (const char* s : {"pass", "fail", "skipped"}) counts[s] = tally_.contains(s) ? tally_.at(s) : 0;
    for (const auto& [k, v] : extra_.items()) counts[k] = v;
    return Json{{"config", config_}, {"results", results_}, {"counts", counts}};
  }

  std::string text() const {
    std::ostringstream os;
    os << config_["command"].get<std::string>() << " (field " << config_["field"].get<std::string>() << ", seed "
       << config_["seed"] << ")\n";
    for (const auto& r : results_) {
      std::string status = r["status"];
      for (auto& c : status) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      os << status << " " << r["check"].get<std::string>();
      if (!r["details"].empty()) os << " " << r["details"].dump();
      os << "\n";
    }
    os << "counts " << json()["counts"].dump() << "\n";
    return os.str();
  }

 private:
  Json config_;
  Json results_ = Json::array();
  std::map<std::string, std::size_t> tally_;
  Json extra_ = Json::object();
};

// Input problems: exit 2.
struct InputError : std::runtime_error {
  ErrorCode code;
  InputError(ErrorCode c, const std::string& what) : std::runtime_error(what), code(c) {}
};

[[noreturn]] void input_error(const Error& e) { throw InputError(e.code(), e.what()); }

Json config_for(const std::string& command, const Options& o) {
  return Json{{"command", command}, {"field", o.field},     {"seed", o.seed},
              {"samples", o.samples}, {"generator", Rng::kName}};
}

Json failures_json(const std::vector<std::string>& failures, std::size_t keep = 5) {
  Json out = Json::array();
  for (std::size_t i = 0; i < failures.size() && i < keep; ++i) out.push_back(failures[i]);
  return out;
}

Json partition_json(const PartitionReport& r) {
  return Json{{"seed", r.seed}, {"checked", r.checked}, {"failures", r.failures.size()},
              {"first_failures", failures_json(r.failures)}};
}

Side side_of(const Options& o) {
  if (o.side == "left") return Side::Left;
  if (o.side == "right") return Side::Right;
  throw InputError(ErrorCode::ParseError, "side must be left or right");
}

Algebra algebra_of(const FieldSpec& f, const Options& o) {
  try {
    if (f.kind == FieldKind::F2RationalFunctions) return Algebra::tower();
    return Algebra::quaternion(f, f.parse(o.a), f.parse(o.b));
  } catch (const Error& e) {
    input_error(e);
  }
}

FieldSpec field_of(const Options& o) {
  try {
    return field_from_name(o.field);
  } catch (const Error& e) {
    input_error(e);
  }
}

HfdDescriptor read_descriptor(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw InputError(ErrorCode::ParseError, "cannot open " + path);
  try {
    return descriptor_from_json(Json::parse(is));
  } catch (const Json::exception& e) {
    throw InputError(ErrorCode::ParseError, e.what());
  } catch (const Error& e) {
    input_error(e);
  }
}

void save_descriptor(const Options& o, const HfdDescriptor& d) {
  if (o.save.empty()) return;
  std::ofstream os(o.save);
  if (!os) throw InputError(ErrorCode::ParseError, "cannot write " + o.save);
  os << to_json(d).dump(2) << "\n";
}

Json classification_json(const HfdClassification& c) {
  return Json{{"case", to_string(c.kind)},
              {"attained_planes", c.k.size()},
              {"dimension", c.dimension},
              {"is_clifford", c.kind == HfdCase::PlaneOfLines},
              {"v", to_json(c.v)}};
}

struct Built {
  ProjSubspace kappa;
  Algebra h;
};

// The Clifford plane of the chosen algebra; NotDivision is an input error.
Built clifford_plane(const Options& o, Rng& rng, int extra) {
  const FieldSpec f = field_of(o);
  Algebra h = algebra_of(f, o);
  try {
    return {clifford_hfd_plane(h, side_of(o), rng, extra), h};
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotDivision || e.code() == ErrorCode::UnsupportedBaseField) input_error(e);
    throw;
  }
}

void cmd_demo_clifford(const Options& o, Report& r) {
  Rng master(o.seed);
  Rng rng(master.fork());
  const auto [kappa, h] = clifford_plane(o, rng, 10);
  const Side side = side_of(o);
  const FieldSpec& f = kappa.field();
  r.add("algebra", "pass", Json{{"algebra", to_json(h)}, {"is_division", true}, {"side", to_string(side)}});

  bool external = false;
  try {
    external = is_external_plane(kappa);
  } catch (const Error&) {
  }
  const PolarType polar_type = plane_polar_type(kappa);
  r.pass_if("plane_external", external, Json{{"plane", to_json(kappa)}});
  const PolarType expected = f.characteristic() == 2 ? PolarType::SelfPolar : PolarType::Skew;
  r.pass_if("plane_polar_type", polar_type == expected, Json{{"plane_polar_type", to_string(polar_type)}});

  std::size_t off = 0, nucleus_failures = 0;
  Rng lines(master.fork());
  for (std::size_t i = 0; i < o.samples; ++i) {
    const auto g = gamma(clifford_class(h, side, random_line3(f, lines)));
    off += !kappa.contains(g);
    if (f.characteristic() == 2) nucleus_failures += !is_nucleus_line(g);
  }
  r.pass_if("classes_coplanar", off == 0, Json{{"classes", o.samples}, {"off_plane", off}});
  if (f.characteristic() == 2)
    r.pass_if("nucleus_lines", nucleus_failures == 0, Json{{"lines", o.samples}, {"failures", nucleus_failures}});

  const auto part = verify_clifford_parallelism(h, side, o.samples, master.fork());
  r.pass_if("partition", part.ok(), partition_json(part));

  const auto d = constant_descriptor(kappa);
  const auto c = classify(d);
  r.pass_if("classification", c.kind == HfdCase::PlaneOfLines && c.dimension == 2, classification_json(c));
  r.add("descriptor", "info", to_json(d));
  save_descriptor(o, d);
}

void cmd_construct_hfd(const Options& o, Report& r) {
  Rng master(o.seed);
  HfdDescriptor d{ProjSubspace::empty(FieldSpec::rationals(), 5), {}, 0, {}, {}};
  if (!o.in.empty()) {
    d = read_descriptor(o.in);
  } else if (!o.auto_second) {
    throw InputError(ErrorCode::ParseError, "construct-hfd needs --in FILE or --auto-second-plane");
  }
  if (o.auto_second) {
    Rng rng(master.fork());
    std::optional<AnisotropyCertificate> cert;
    ProjSubspace kappa1 = ProjSubspace::empty(FieldSpec::rationals(), 5);
    if (o.in.empty()) {
      kappa1 = clifford_plane(o, rng, 10).kappa;
    } else {
      kappa1 = d.planes.at(d.default_plane);
      if (const auto* c = d.certificate(d.default_plane)) cert = *c;
    }
    try {
      d = two_plane_descriptor(kappa1, rng, o.exceptions, cert ? &*cert : nullptr);
    } catch (const Error& e) {
      r.add("second_plane", "fail", Json{{"error", to_string(e.code())}, {"message", e.what()}});
      return;
    }
    r.add("second_plane", "pass", Json{{"plane", to_json(d.planes[1])}, {"d", to_json(d.d)}});
  }

  try {
    validate(d);
    r.add("validate", "pass");
  } catch (const Error& e) {
    r.add("validate", "fail", Json{{"error", to_string(e.code())}, {"message", e.what()}});
    return;
  }
  try {
    r.add("classification", "pass", classification_json(classify(d)));
  } catch (const Error& e) {
    r.add("classification", "fail", Json{{"error", to_string(e.code())}, {"message", e.what()}});
  }
  r.add("descriptor", "info", to_json(d));
  save_descriptor(o, d);
}

// Points of H5 where a broken descriptor is likely to show: isotropic points
// of the carrier planes and poles of tangent hyperplanes containing a plane.
std::vector<Vec> targeted_points(const HfdDescriptor& d) {
  std::vector<Vec> out = tangent_plane_witnesses(d);
  for (std::size_t i = 0; i < d.planes.size(); ++i) {
    try {
      const auto v = section_isotropy(d.planes[i], d.certificate(i));
      if (!v.is_isotropic()) continue;
      Vec x = zero_vec(d.d.field(), 6);
      for (std::size_t j = 0; j < v.witness()->size(); ++j) axpy(x, (*v.witness())[j], d.planes[i].row(j));
      out.push_back(std::move(x));
    } catch (const Error&) {
    }
  }
  return out;
}

void cmd_verify(const Options& o, Report& r) {
  if (o.in.empty()) throw InputError(ErrorCode::ParseError, "verify needs --in FILE");
  const HfdDescriptor d = read_descriptor(o.in);
  const FieldSpec& f = d.d.field();
  if (o.skip_validate) {
    r.add("validate", "skipped");
  } else {
    try {
      validate(d);
      r.add("validate", "pass");
    } catch (const Error& e) {
      r.add("validate", "fail", Json{{"error", to_string(e.code())}, {"message", e.what()}});
      return;
    }
  }

  Rng master(o.seed);
  auto hfd_check = [&](const std::string& name, const std::vector<Vec>& points) {
    std::size_t passed = 0;
    std::vector<std::string> failures;
    for (std::size_t i = 0; i < points.size(); ++i) {
      HfdCheck c;
      try {
        c = verify_hfd_at(d, points[i]);
      } catch (const Error& e) {
        c.detail = e.what();
      }
      if (c.pass)
        ++passed;
      else
        failures.push_back("point " + std::to_string(i) + ": " + c.detail);
    }
    r.pass_if(name, failures.empty(),
              Json{{"checked", points.size()}, {"passed", passed}, {"failures", failures.size()},
                   {"first_failures", failures_json(failures)}});
  };
  std::vector<Vec> random_points;
  Rng prng(master.fork());
  for (std::size_t i = 0; i < o.samples; ++i) random_points.push_back(random_quadric_point(f, prng));
  hfd_check("hfd_random_points", random_points);
  hfd_check("hfd_targeted_points", targeted_points(d));

  const std::size_t small = std::min<std::size_t>(o.samples, 200);
  auto guarded = [&](const std::string& name, const std::function<PartitionReport()>& run) {
    try {
      const auto rep = run();
      r.pass_if(name, rep.ok(), partition_json(rep));
    } catch (const Error& e) {
      r.add(name, "fail", Json{{"error", to_string(e.code())}, {"message", e.what()}});
    }
  };
  const std::uint64_t par_seed = master.fork();
  guarded("parallelism_partition", [&] {
    return verify_parallelism(f, [&](const ProjSubspace& l) { return parallelism_from_hfd(d, l); }, small, par_seed);
  });
  const std::uint64_t flock_seed = master.fork();
  guarded("flock", [&] {
    const Vec p = d.d.row(0) + d.d.row(1);
    const std::size_t i = f_index(d, p);
    const LinearFlock fl(p, d.planes[i], d.certificate(i));
    return verify_flock(fl, small, flock_seed);
  });
  const std::uint64_t dist_seed = master.fork();
  bool clifford = false;
  try {
    clifford = is_clifford(d);
  } catch (const Error&) {
  }
  if (clifford)
    r.add("distinguished_class", "skipped", Json{{"reason", "Clifford parallelism"}});
  else
    guarded("distinguished_class", [&] { return check_distinguished_class(d, 10, std::min<std::size_t>(small, 100), dist_seed); });
}

void cmd_search_finite(const Options& o, Report& r) {
  const FieldSpec f = field_of(o);
  if (f.kind != FieldKind::PrimeField || (f.p != 2 && f.p != 3))
    throw InputError(ErrorCode::UnsupportedField, "search-finite runs over gf2 or gf3");
  if (o.what != "all" && o.what != "external_planes" && o.what != "zero_secants")
    throw InputError(ErrorCode::ParseError, "--what must be external_planes, zero_secants or all");
  if (o.what != "zero_secants") {
    std::uint64_t total = 0, external = 0;
    SubspaceStream planes(f, 5, 2);
    while (auto p = planes.next()) {
      ++total;
      external += is_external_plane(*p);
    }
    r.pass_if("external_planes", external == 0 && total == gaussian_binomial(6, 3, f.p),
              Json{{"planes", total}, {"external", external}});
    r.count("planes", total);
    r.count("external_planes", external);
  }
  if (o.what != "external_planes") {
    std::map<std::string, std::uint64_t> classes;
    std::uint64_t total = 0;
    SubspaceStream lines(f, 5, 1);
    while (auto l = lines.next()) {
      ++total;
      ++classes[std::string(to_string(classify_line(*l)))];
    }
    Json by_class = Json::object();
    for (const auto& [k, v] : classes) by_class[k] = v;
    const std::uint64_t zero = classes.contains("secant_0") ? classes.at("secant_0") : 0;
    r.pass_if("zero_secants", zero > 0 && total == gaussian_binomial(6, 2, f.p),
              Json{{"lines", total}, {"by_class", by_class}});
    r.count("lines", total);
    r.count("zero_secants", zero);
  }
}

void emit(const Options& o, const std::string& body) {
  if (o.out.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream os(o.out);
  if (!os) throw InputError(ErrorCode::ParseError, "cannot write " + o.out);
  os << body;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact construction and verification of pencilled parallelisms of PG(3,K)"};
  app.require_subcommand(1);
  Options o;

  std::map<CLI::App*, std::size_t> default_samples;
  auto common = [&](CLI::App* sub, std::size_t samples) {
    default_samples[sub] = samples;
    sub->add_option("--field", o.field, "Q, gf2, gf3 or f2st");
    sub->add_option("--seed", o.seed, "seed for every random choice");
    sub->add_option("--samples", o.samples, "sample count (default " + std::to_string(samples) + ")");
    sub->add_flag("--json", o.json, "JSON report");
    sub->add_option("--out", o.out, "write the report here instead of stdout");
  };
  auto algebra_opts = [&](CLI::App* sub) {
    sub->add_option("--a", o.a, "i^2 (quaternions over Q)");
    sub->add_option("--b", o.b, "j^2 (quaternions over Q)");
    sub->add_option("--side", o.side, "left or right");
  };

  auto* demo = app.add_subcommand("demo", "Demonstrations");
  demo->require_subcommand(1);
  auto* clifford = demo->add_subcommand("clifford", "Clifford parallelism of a division algebra");
  common(clifford, 100);
  algebra_opts(clifford);
  clifford->add_option("--save-descriptor", o.save, "write the constant descriptor as JSON");

  auto* construct = app.add_subcommand("construct-hfd", "Validate and classify a descriptor");
  common(construct, 0);
  algebra_opts(construct);
  construct->add_option("--in", o.in, "descriptor JSON");
  construct->add_flag("--auto-second-plane", o.auto_second, "add a second external plane through a line");
  construct->add_option("--exceptions", o.exceptions, "exception points mapped to the first plane");
  construct->add_option("--save-descriptor", o.save, "write the resulting descriptor as JSON");

  auto* verify = app.add_subcommand("verify", "Sampled verification of a descriptor");
  common(verify, 1000);
  verify->add_option("--in", o.in, "descriptor JSON")->required();
  verify->add_flag("--skip-validate", o.skip_validate, "run the checks even if validation fails");

  auto* search = app.add_subcommand("search-finite", "Exhaustive search over GF(2) or GF(3)");
  common(search, 0);
  search->add_option("--what", o.what, "external_planes, zero_secants or all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  for (const auto& [sub, n] : default_samples)
    if (sub->parsed() && sub->count("--samples") == 0) o.samples = n;

  std::string command;
  std::function<void(const Options&, Report&)> run;
  if (clifford->parsed()) {
    command = "demo clifford";
    run = cmd_demo_clifford;
  } else if (construct->parsed()) {
    command = "construct-hfd";
    run = cmd_construct_hfd;
  } else if (verify->parsed()) {
    command = "verify";
    run = cmd_verify;
  } else {
    command = "search-finite";
    if (!search->count("--field")) o.field = "gf2";
    run = cmd_search_finite;
  }

  Json config = config_for(command, o);
  if (!o.in.empty()) config["input"] = o.in;
  if (command == "demo clifford" || (command == "construct-hfd" && o.in.empty())) {
    if (o.field != "f2st") {
      config["a"] = o.a;
      config["b"] = o.b;
    }
    config["side"] = o.side;
  }
  if (command == "construct-hfd") {
    config["auto_second_plane"] = o.auto_second;
    config["exceptions"] = o.exceptions;
  }
  if (command == "verify") config["skip_validate"] = o.skip_validate;
  if (command == "search-finite") config["what"] = o.what;

  Report report(config);
  try {
    run(o, report);
    emit(o, o.json ? report.json().dump(2) + "\n" : report.text());
  } catch (const InputError& e) {
    const Json err{{"error", {{"code", to_string(e.code)}, {"message", e.what()}}}};
    if (o.json) std::cout << err.dump(2) << "\n";
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    const Json err{{"error", {{"code", to_string(e.code())}, {"message", e.what()}}}};
    if (o.json) std::cout << err.dump(2) << "\n";
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return report.failed() ? 1 : 0;
}
