// tropkit: command-line front end over the JSON formats.
// Exit codes: 0 success, 1 IO or parse error, 2 domain violation.

#include <CLI11.hpp>
#include <iostream>
#include <sstream>

#include "tropkit/json_io.hpp"

using namespace tropkit;
namespace io = tropkit::io;
using io::json;

namespace {

struct Outcome {
  Outcome(json r, std::string s, int c, std::optional<json> a = std::nullopt)
      : result(std::move(r)), summary(std::move(s)), code(c), artifact(std::move(a)) {}
  json result;
  std::string summary;
  int code = 0;
  std::optional<json> artifact;  // written to --output when given
};

bool g_json = false;

std::string join_counts(const std::vector<Polytope>& cells) {
  std::map<std::size_t, std::size_t> by_dim;
  for (const auto& c : cells) ++by_dim[c.dim()];
  std::ostringstream s;
  bool first = true;
  for (const auto& [d, k] : by_dim) {
    s << (first ? "" : " ") << "dim" << d << "=" << k;
    first = false;
  }
  return s.str();
}

Rat top_volume(const QuotientComplex& q) {
  Rat v = 0;
  for (const auto& c : q.cells())
    if (c.dim() == q.ambient_dim()) v += normalized_volume(c);
  return v;
}

std::string stem(const std::string& path) { return std::filesystem::path(path).stem().string(); }

Outcome validate_complex(const json& j) {
  auto d = io::complex_from(j);
  auto v = validate_periodic(d.cells, d.lattice, d.gamma);
  if (!v.ok()) {
    const auto& bad = *v.violation;
    std::string cells;
    for (auto c : bad.cells) cells += (cells.empty() ? "" : ", ") + std::to_string(c);
    return {{{"valid", false}, {"violation", io::to_json(bad)}},
            "invalid: " + std::string(to_string(bad.kind)) + ": " + bad.message + (cells.empty() ? "" : " (cells " + cells + ")"),
            2};
  }
  auto q = quotient(*v.complex);
  Rat vol = top_volume(q);
  json r = {{"valid", true},
            {"orbits", q.cells().size()},
            {"volume", io::to_json(vol)},
            {"covolume", io::to_json(d.lattice.covolume())}};
  return {r, "valid periodic complex: " + join_counts(q.cells()) + "; volume " + to_string(vol) + " = |det| " +
                 to_string(d.lattice.covolume()),
          0};
}

Outcome validate_skeleton_file(const json& j) {
  auto b = io::skeleton_from(j);
  auto rep = validate_skeleton(b.model);
  std::string s = rep.ok() ? "valid skeleton: " + std::to_string(b.model.simplices.size()) + " simplices" : "invalid skeleton";
  for (const auto& v : rep.violations) s += "\n  " + std::string(to_string(v.kind)) + ": " + v.message;
  return {io::to_json(rep), s, rep.ok() ? 0 : 2};
}

Outcome validate_tropsub(const json& j, const std::string& path) {
  auto d = io::place_data_from(j, stem(path));
  json r = {{"valid", true}, {"support", d.x.support.size()}};
  std::string s = "valid tropical data at " + d.place + ": " + std::to_string(d.x.support.size()) + " support cells";
  if (!d.x.provenance) return {r, s, 0};
  auto rep = validate_nondeg_consistency(d.x);
  r["valid"] = rep.clean();
  r["consistency"] = io::to_json(rep);
  if (rep.clean()) return {r, s + "; skeleton data consistent", 0};
  s = "inconsistent input at " + d.place;
  for (const auto& f : rep.findings) s += "\n  " + f.tag + ": " + f.message;
  return {r, s, 2};
}

Outcome cmd_validate(const std::string& path) {
  json j = io::read_file(path);
  if (j.contains("strata")) return validate_skeleton_file(j);
  if (j.contains("support")) return validate_tropsub(j, path);
  if (j.contains("base")) return validate_complex(j.at("base"));
  if (j.contains("lattice") && j.contains("cells")) return validate_complex(j);
  if (j.contains("factors")) {
    auto d = io::decomposition_from(j);
    return {{{"valid", true}, {"factors", d.factors.size()}}, "valid decomposition", 0};
  }
  if (j.contains("graphs")) {
    auto c = io::curve_data_from(j);
    for (const auto& [v, g] : c.graphs) jacobian_torus_rank(g);
    return {{{"valid", true}, {"places", c.graphs.size()}}, "valid graph set", 0};
  }
  if (j.contains("torus_rank") || j.contains("dim")) {
    io::profile_from(j);
    return {{{"valid", true}}, "valid profile", 0};
  }
  throw io::ParseError(path + ": unrecognised document");
}

PeriodicComplex load_checked_complex(const std::string& path) {
  auto d = io::complex_from(io::read_file(path));
  return make_periodic(d.cells, d.lattice, d.gamma);
}

Outcome cmd_quotient(const std::string& path) {
  auto q = quotient(load_checked_complex(path));
  json r = io::to_json(q);
  return {r, "quotient cells: " + join_counts(q.cells()), 0, r};
}

Outcome cmd_refine(const std::string& path, const std::string& cuts_path) {
  auto c = load_checked_complex(path);
  json cj = io::read_file(cuts_path);
  const json& list = cj.is_array() ? cj : cj.at("hyperplanes");
  std::vector<Hyperplane> hs;
  for (const auto& h : list) hs.push_back(io::hyperplane_from(h));
  auto q = quotient(refine(c, hs));
  json r = io::to_json(q.base());
  return {r, "refined quotient cells: " + join_counts(q.cells()), 0, r};
}

Outcome cmd_tropicalize(const std::string& sk_path, const std::string& target_path, const std::string& nondeg_path,
                        const std::string& weights_path, bool subdivide) {
  auto b = io::skeleton_from(io::read_file(sk_path));
  if (!nondeg_path.empty()) b.nondeg = io::nondeg_from(io::read_file(nondeg_path));
  if (!b.nondeg) throw Error(Errc::MissingData, "no non-degeneracy data (skeleton \"nondeg\" or --nondeg)");
  std::map<std::string, Rat> weights;
  if (!weights_path.empty()) weights = io::weights_from(io::read_file(weights_path));
  auto report = validate_skeleton(b.model);
  if (!report.ok()) throw Error(report.violations.front().kind, report.violations.front().message);
  CarrierPtr target = io::carrier_from_any(io::read_file(target_path));
  if (subdivide) {
    std::vector<Polytope> images;
    for (const auto& id : nondegenerate_set(b.model, *b.nondeg)) {
      auto it = b.fmaps.find(id);
      if (it == b.fmaps.end()) throw Error(Errc::MissingData, "no exponent map for simplex " + id);
      const auto& s = b.model.simplex(id);
      images.push_back(image_faff(it->second, standard_simplex(s.r, s.vpi)));
    }
    target = make_subdivisional(*target, images);
  }
  auto x = assemble_canonical(b.model, *b.nondeg, weights, b.fmaps, target);
  json r = io::to_json(x);
  Rat mass = x.measure->mass();
  return {r, "support cells: " + std::to_string(x.support.size()) + "\nmass: " + to_string(mass) + "\ndim: " + std::to_string(x.dim),
          0, r};
}

std::string measure_summary(const PolytopalMeasure& mu) {
  return "terms: " + std::to_string(mu.terms().size()) + "\nmass: " + to_string(mu.mass());
}

Outcome cmd_pushforward(const std::string& mu_path, const std::string& map_path, const std::string& target_path) {
  auto mu = io::measure_from(io::read_file(mu_path));
  auto f = io::piecewise_from(io::read_file(map_path));
  auto target = io::carrier_from_any(io::read_file(target_path));
  auto out = pushforward_exact(mu, f, target);
  json r = io::to_json(out);
  return {r, measure_summary(out), 0, r};
}

Outcome cmd_strict_supports(const std::string& mu_path, const std::string& sigma_path) {
  auto mu = io::measure_from(io::read_file(mu_path));
  CarrierPtr sigma = sigma_path.empty() ? mu.carrier() : io::carrier_from_any(io::read_file(sigma_path));
  auto s = strict_supports(mu, *sigma);
  std::string text = "strict supports: " + std::to_string(s.size());
  for (const auto& x : s) text += "\n  cell " + std::to_string(x.cell) + " epsilon " + to_string(x.epsilon);
  json r = {{"strict_supports", io::to_json(s)}};
  return {r, text, 0, r};
}

Outcome cmd_product(const std::string& a_path, const std::string& b_path) {
  auto a = io::measure_from(io::read_file(a_path));
  auto b = io::measure_from(io::read_file(b_path));
  auto p = product_measure(a, b);
  json r = io::to_json(p);
  return {r, measure_summary(p), 0, r};
}

Outcome cmd_bogomolov(const std::vector<std::string>& paths, std::size_t N) {
  std::vector<PlaceTropData> data;
  for (const auto& p : paths) data.push_back(io::place_data_from(io::read_file(p), stem(p)));
  auto v = bogomolov_check(data, N);
  json r = io::to_json(v);
  std::string s = std::string(to_string(v.kind));
  if (v.witness) {
    const auto& w = *v.witness;
    s += " at " + w.place + ": dim sigma " + std::to_string(w.dim_sigma) + " > dim alpha(sigma) " +
         std::to_string(w.dim_alpha) + ", N=" + std::to_string(w.N);
  }
  s += " (" + v.tag + ")";
  return {r, s, 0, r};
}

Outcome cmd_ndr(const std::string& path) {
  auto d = io::decomposition_from(io::read_file(path));
  auto s = conjecture_status(d);
  return {io::to_json(s), s.summary(), 0};
}

Outcome cmd_curve(const std::string& path) {
  auto c = io::curve_data_from(io::read_file(path));
  auto s = curve_status(c.graphs, c.g);
  json r = io::to_json(s);
  json ranks = json::object();
  for (const auto& [v, g] : c.graphs) ranks[v] = jacobian_torus_rank(g);
  r["cycle_rank"] = ranks;
  return {r, s.summary(), 0};
}

int emit(const Outcome& o, const std::string& output) {
  if (!output.empty() && o.artifact) io::write_file(output, *o.artifact);
  if (g_json)
    std::cout << io::dump(o.result);
  else
    std::cout << o.summary << "\n";
  return o.code;
}

int report_violation(const Error& e) {
  if (g_json)
    std::cout << io::dump({{"violation", std::string(to_string(e.code()))}, {"message", e.what()}});
  else
    std::cout << "violation: " << e.what() << "\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact tropical and polyhedral toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", g_json, "Print machine-readable JSON only");
  std::string output;

  std::function<Outcome()> run;

  std::string path, path2, path3, nondeg, weights;
  std::vector<std::string> paths;
  bool subdivide = false;
  std::size_t N = 2;

  auto* validate = app.add_subcommand("validate", "Validate a complex, skeleton, tropical data, profile or graph file");
  validate->add_option("file", path)->required();
  validate->callback([&] { run = [&] { return cmd_validate(path); }; });

  auto* quot = app.add_subcommand("quotient", "Quotient cells of a periodic complex");
  quot->add_option("complex", path)->required();
  quot->add_option("-o,--output", output);
  quot->callback([&] { run = [&] { return cmd_quotient(path); }; });

  auto* ref = app.add_subcommand("refine", "Refine a periodic complex by lattice-periodic hyperplanes");
  ref->add_option("complex", path)->required();
  ref->add_option("hyperplanes", path2)->required();
  ref->add_option("-o,--output", output);
  ref->callback([&] { run = [&] { return cmd_refine(path, path2); }; });

  auto* trop = app.add_subcommand("tropicalize", "Assemble the canonical measure of a skeleton on a target decomposition");
  trop->add_option("skeleton", path)->required();
  trop->add_option("target", path2)->required();
  trop->add_option("--nondeg", nondeg);
  trop->add_option("--weights", weights);
  trop->add_flag("--subdivide", subdivide, "Refine the target along the simplex images first");
  trop->add_option("-o,--output", output);
  trop->callback([&] { run = [&] { return cmd_tropicalize(path, path2, nondeg, weights, subdivide); }; });

  auto* push = app.add_subcommand("pushforward", "Push a measure forward along a piecewise-affine map");
  push->add_option("measure", path)->required();
  push->add_option("map", path2)->required();
  push->add_option("target", path3)->required();
  push->add_option("-o,--output", output);
  push->callback([&] { run = [&] { return cmd_pushforward(path, path2, path3); }; });

  auto* strict = app.add_subcommand("strict-supports", "Strict supports of a measure");
  strict->add_option("measure", path)->required();
  strict->add_option("--sigma", path2, "Decomposition to re-express on (default: the measure's carrier)");
  strict->add_option("-o,--output", output);
  strict->callback([&] { run = [&] { return cmd_strict_supports(path, path2); }; });

  auto* prod = app.add_subcommand("product", "Product of two measures");
  prod->add_option("first", path)->required();
  prod->add_option("second", path2)->required();
  prod->add_option("-o,--output", output);
  prod->callback([&] { run = [&] { return cmd_product(path, path2); }; });

  auto* bog = app.add_subcommand("bogomolov-check", "Tropical triviality and the diagonal dimension test");
  bog->add_option("files", paths)->required();
  bog->add_option("--N", N, "Number of factors")->capture_default_str();
  bog->add_option("-o,--output", output);
  bog->callback([&] { run = [&] { return cmd_bogomolov(paths, N); }; });

  auto* nd = app.add_subcommand("ndr", "Nowhere-degenerate rank and conjecture status of a decomposition");
  nd->add_option("decomposition", path)->required();
  nd->callback([&] { run = [&] { return cmd_ndr(path); }; });

  auto* curve = app.add_subcommand("curve-check", "Dual-graph criterion for curves");
  curve->add_option("graphs", path)->required();
  curve->callback([&] { run = [&] { return cmd_curve(path); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    return emit(run(), output);
  } catch (const Error& e) {
    return report_violation(e);
  } catch (const io::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const json::exception& e) {
    std::cerr << "error: malformed input: " << e.what() << "\n";
    return 1;
  }
}
