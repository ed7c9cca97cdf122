#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mahler/becker.hpp"
#include "mahler/corpus.hpp"
#include "mahler/errors.hpp"
#include "mahler/io.hpp"
#include "mahler/regular.hpp"

namespace mahler::cli {

namespace {

using io::Json;

int env_int(const char* name, int fallback) {
  const char* v = std::getenv(name);
  if (v == nullptr || *v == '\0') return fallback;
  try {
    return std::stoi(v);
  } catch (const std::exception&) {
    return fallback;
  }
}

struct Options {
  std::optional<int> k;
  long order = 64;
  bool order_given = false;
  int depth_max = env_int("MAHLER_DEPTH_MAX", 4);
  int deg_max = env_int("MAHLER_DEG_MAX", 12);
  int m_max = 3;
  int index = 0;
  long cyclo_order = 1;
  int n_max = 6;
  bool minimize_shift = false;
  std::string format = "json";
  std::string dir = MAHLER_DEFAULT_CORPUS_DIR;
  std::vector<std::string> inputs;
};

std::string read_all(std::istream& in) {
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class Context {
 public:
  Context(const Options& opt, std::istream& in) : opt_(opt), in_(in) {}

  const Options& opt() const { return opt_; }

  Json load(std::size_t position, const char* what) const {
    if (position >= opt_.inputs.size()) throw InvalidInput(std::string("missing input: ") + what);
    const std::string& arg = opt_.inputs[position];
    if (arg == "-") return io::parse(read_all(in_));
    const auto first = arg.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) return io::parse(arg);
    std::ifstream file(arg);
    if (!file) throw InvalidInput("cannot read " + std::string(what) + " from '" + arg + "'");
    return io::parse(read_all(file));
  }

  bool has(std::size_t position) const { return position < opt_.inputs.size(); }

  MahlerEquation equation(std::size_t position) const {
    Json j = load(position, "equation");
    if (j.is_object() && !j.contains("coeffs") && j.contains("equation")) j = j.at("equation");
    if (j.is_object() && !j.contains("k") && opt_.k) j["k"] = *opt_.k;
    MahlerEquation eq = io::equation_from_json(j);
    if (opt_.k && *opt_.k != eq.k()) throw InvalidInput("--k disagrees with the equation's k");
    return eq;
  }

  LaurentSeries series(std::size_t position) const { return io::series_from_json(load(position, "series")); }

  /// The supplied series, or the sum of the solution basis when none is given.
  LaurentSeries solution(const MahlerEquation& eq, std::size_t position, long order) const {
    if (has(position)) {
      LaurentSeries f = series(position);
      if (!verify(eq, f).holds()) throw InvalidInput("the supplied series does not solve the equation");
      return f;
    }
    const auto basis = solve_series(eq, order);
    if (basis.empty()) throw InvalidInput("the equation has no nonzero Laurent solution");
    LaurentSeries total = basis.front();
    for (std::size_t i = 1; i < basis.size(); ++i) total = total + basis[i];
    return total;
  }

  int k_or(int fallback) const { return opt_.k.value_or(fallback); }

  int required_k() const {
    if (!opt_.k) throw CLI::RequiredError("--k");
    return *opt_.k;
  }

 private:
  const Options& opt_;
  std::istream& in_;
};

Json found_json(const std::optional<MahlerEquation>& eq) {
  Json j = {{"found", eq.has_value()}};
  if (eq) j["equation"] = io::to_json(*eq);
  return j;
}

Json residual_json(const Residual& r) {
  return {{"residual_order", r.residual_order}, {"propagated_order", r.propagated_order}, {"holds", r.holds()}};
}

Json closure_json(const ClosureResult& c) {
  Json j = {{"status", c.rep ? "ok" : "inconclusive"}, {"dim", c.basis.size()}};
  if (c.rep) j["rep"] = io::to_json(*c.rep);
  if (!c.reason.empty()) j["reason"] = c.reason;
  return j;
}

template <class F>
auto stage(const char* label, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const InvariantViolation& e) {
    throw InvariantViolation(std::string(label) + ": " + e.what());
  } catch (const InvalidInput& e) {
    throw InvalidInput(std::string(label) + ": " + e.what());
  }
}

Json pipeline(const Context& ctx) {
  const Options& opt = ctx.opt();
  const MahlerEquation eq = ctx.equation(0);
  const long order = opt.order_given ? opt.order : 256;
  Json doc = {{"equation", io::to_json(eq)}};
  const LaurentSeries f = stage("solve", [&] { return ctx.solution(eq, 1, order); });
  doc["solve"] = {{"nu", valuation_bound(eq)}, {"series", io::to_json(f)}};
  const BeckerNormalization norm = stage("normalize", [&] { return normalize(eq, f); });
  doc["normalize"] = io::to_json(norm);
  const auto found = stage("becker-search", [&] {
    return becker_form_for(norm, f, {opt.depth_max, opt.deg_max, 16}, opt.minimize_shift);
  });
  const long shift = found ? found->shift : norm.gamma;
  const LaurentSeries g = normalized_series(with_shift(norm, shift), f);
  doc["becker_search"] = found_json(found ? std::optional<MahlerEquation>(found->equation) : std::nullopt);
  doc["becker_search"]["g_order"] = g.order();
  doc["becker_search"]["shift"] = shift;
  if (found) {
    doc["becker_search"]["verification"] = residual_json(verify(found->equation, g));
    stage("witness", [&] {
      const MahlerEquation w = witness_equation(with_shift(norm, shift), found->equation);
      doc["witness"] = {{"equation", io::to_json(w)},
                        {"verification", residual_json(verify(w, f))},
                        {"certificate", io::to_json(certify_regular(w))}};
      return 0;
    });
  }
  doc["certify"] = stage("certify", [&] { return io::to_json(certify(eq, f, opt.m_max)); });
  return doc;
}

Json corpus_command(const Context& ctx, int& status) {
  const Options& opt = ctx.opt();
  if (opt.inputs.empty()) throw CLI::ValidationError("corpus", "expected list, emit <name>, regenerate or check");
  const std::string& action = opt.inputs[0];
  namespace fs = std::filesystem;
  if (action == "list") return {{"items", corpus_names()}};
  if (action == "emit") {
    if (opt.inputs.size() < 2) throw CLI::ValidationError("corpus emit", "needs an item name");
    return io::to_json(corpus_item(opt.inputs[1]));
  }
  if (action == "regenerate" || action == "check") {
    Json report = Json::array();
    for (const auto& name : corpus_names()) {
      const std::string text = io::dump(io::to_json(corpus_item(name)));
      const fs::path path = fs::path(opt.dir) / (name + ".json");
      if (action == "regenerate") {
        fs::create_directories(opt.dir);
        std::ofstream(path) << text;
        report.push_back({{"name", name}, {"path", path.string()}});
      } else {
        std::ifstream file(path);
        const bool match = file && read_all(file) == text;
        if (!match) status = kInternal;
        report.push_back({{"name", name}, {"match", match}});
      }
    }
    return {{"items", report}};
  }
  throw CLI::ValidationError("corpus", "unknown action '" + action + "'");
}

Json roundtrip(const Context& ctx) {
  Json report = Json::array();
  for (const auto& path : ctx.opt().inputs) {
    std::ifstream file(path);
    if (!file) throw InvalidInput("cannot read '" + path + "'");
    const std::string text = read_all(file);
    const Json j = io::parse(text);
    const std::string canonical = io::canonicalize(j);
    const std::string again = io::canonicalize(io::parse(canonical));
    if (again != canonical) throw InvariantViolation("canonical form of '" + path + "' is not a fixpoint");
    Json entry = {{"path", path}, {"schema", io::to_string(io::detect_schema(j))}, {"canonical", text == canonical}};
    if (text != canonical) {
      std::size_t at = 0;
      while (at < text.size() && at < canonical.size() && text[at] == canonical[at]) ++at;
      const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<long>(at), '\n');
      const auto start = text.rfind('\n', at == 0 ? 0 : at - 1);
      const auto column = start == std::string::npos ? at + 1 : at - start;
      entry["first_difference"] = {{"byte", at}, {"line", line}, {"column", column}};
    }
    report.push_back(entry);
  }
  return {{"files", report}};
}

void render_text(const Json& j, std::ostream& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  auto scalar = [](const Json& x) { return x.is_string() ? x.get<std::string>() : x.dump(); };
  auto flat = [&](const Json& a) {
    for (const auto& x : a)
      if (x.is_structured()) return false;
    return true;
  };
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (value.is_object() || (value.is_array() && !flat(value))) {
        out << pad << key << ":\n";
        render_text(value, out, indent + 2);
      } else if (value.is_array()) {
        out << pad << key << ": [";
        for (std::size_t i = 0; i < value.size(); ++i) out << (i ? ", " : "") << scalar(value[i]);
        out << "]\n";
      } else {
        out << pad << key << ": " << scalar(value) << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& x : j) {
      if (x.is_structured()) {
        out << pad << "-\n";
        render_text(x, out, indent + 2);
      } else {
        out << pad << "- " << scalar(x) << "\n";
      }
    }
  } else {
    out << pad << scalar(j) << "\n";
  }
}

void emit(const Json& doc, const Options& opt, std::ostream& out) {
  if (opt.format == "text") {
    render_text(doc, out, 0);
  } else {
    out << io::dump(doc);
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact tools for Mahler equations and k-regular sequences", "mahler"};
  app.require_subcommand(1);
  Options opt;

  struct Command {
    const char* name;
    const char* help;
  };
  const std::vector<Command> commands = {
      {"solve", "Laurent solution basis of an equation"},
      {"verify", "check a series against an equation"},
      {"guess", "fit an equation to a series prefix"},
      {"cartier", "Cartier section of a series"},
      {"rep-eval", "evaluate a linear representation"},
      {"rep-from-eq", "Cartier-closure representation of a solution"},
      {"eq-from-rep", "equation satisfied by a representation's series"},
      {"normalize", "normalize an equation so that q_0(0) != 0"},
      {"becker-search", "search for an equation with a_0 = 1"},
      {"certify", "regularity certificate for a solution"},
      {"witness", "equation for F from a normalization and an a_0 = 1 equation for G"},
      {"decompose", "F = J / prod Gamma(z^(k^j))"},
      {"pole-profile", "cyclotomic pole orders of the companion products"},
      {"corpus", "list, emit, regenerate or check the example corpus"},
      {"roundtrip", "canonical-form check of JSON files"},
      {"pipeline", "solve, normalize, search, witness and certify in one report"},
  };
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("inputs", opt.inputs, "JSON file, '-' for stdin, or inline JSON");
    sub->add_option("--k", opt.k, "base k")->check(CLI::Range(2, 1 << 20));
    sub->add_option("--order", opt.order, "truncation order")->check(CLI::Range(1L, 1L << 20));
    sub->add_option("--depth-max", opt.depth_max, "search depth bound")->check(CLI::Range(1, 16));
    sub->add_option("--deg-max", opt.deg_max, "coefficient degree bound")->check(CLI::Range(0, 256));
    sub->add_option("--m-max", opt.m_max, "largest power k^M tried")->check(CLI::Range(1, 8));
    sub->add_option("--format", opt.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--index", opt.index, "Cartier index r")->check(CLI::NonNegativeNumber);
    sub->add_option("--cyclo-order", opt.cyclo_order, "cyclotomic order for pole-profile")
        ->check(CLI::PositiveNumber);
    sub->add_option("--n-max", opt.n_max, "number of products for pole-profile")->check(CLI::Range(1, 16));
    sub->add_option("--dir", opt.dir, "corpus directory");
    sub->add_flag("--minimize-shift", opt.minimize_shift, "pipeline: retry the Becker search with smaller shifts");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }
  const std::string name = app.get_subcommands().front()->get_name();
  opt.order_given = app.get_subcommands().front()->count("--order") > 0;

  const Context ctx(opt, in);
  int status = kOk;
  try {
    Json doc;
    if (name == "solve") {
      const MahlerEquation eq = ctx.equation(0);
      Json basis = Json::array();
      for (const auto& s : solve_series(eq, opt.order)) basis.push_back(io::to_json(s));
      doc = {{"nu", valuation_bound(eq)}, {"basis", basis}};
    } else if (name == "verify") {
      doc = residual_json(verify(ctx.equation(0), ctx.series(1)));
    } else if (name == "guess") {
      doc = found_json(guess(ctx.series(0), ctx.required_k(),
                             {.d_max = opt.depth_max, .b_max = opt.deg_max, .margin = 16, .d_min = 1}));
    } else if (name == "cartier") {
      const int k = ctx.required_k();
      if (opt.index >= k) throw CLI::ValidationError("--index", "must be below k");
      doc = io::to_json(cartier(ctx.series(0), k, opt.index));
    } else if (name == "rep-eval") {
      const LinearRepresentation rep = io::rep_from_json(ctx.load(0, "representation"));
      doc = {{"series", io::to_json(series_of_rep(rep, opt.order))}};
    } else if (name == "rep-from-eq") {
      const MahlerEquation eq = ctx.equation(0);
      doc = closure_json(closure_rep(eq, ctx.solution(eq, 1, opt.order)));
    } else if (name == "eq-from-rep") {
      doc = io::to_json(rep_to_equation(io::rep_from_json(ctx.load(0, "representation"))));
    } else if (name == "normalize") {
      const MahlerEquation eq = ctx.equation(0);
      doc = io::to_json(ctx.has(1) ? normalize(eq, ctx.solution(eq, 1, opt.order)) : normalize(eq));
    } else if (name == "becker-search") {
      doc = found_json(becker_form_search(ctx.series(0), ctx.required_k(), {opt.depth_max, opt.deg_max, 16}));
    } else if (name == "certify") {
      const MahlerEquation eq = ctx.equation(0);
      doc = io::to_json(certify(eq, ctx.solution(eq, 1, opt.order), opt.m_max));
    } else if (name == "witness") {
      const BeckerNormalization norm = io::normalization_from_json(ctx.load(0, "normalization"));
      const MahlerEquation w = witness_equation(norm, ctx.equation(1));
      doc = {{"equation", io::to_json(w)}, {"certificate", io::to_json(certify_regular(w))}};
    } else if (name == "decompose") {
      const MahlerEquation eq = ctx.equation(0);
      doc = io::to_json(structure_decompose(eq, ctx.solution(eq, 1, opt.order)));
    } else if (name == "pole-profile") {
      doc = {{"order", opt.cyclo_order}, {"profile", pole_profile(ctx.equation(0), opt.cyclo_order, opt.n_max)}};
    } else if (name == "corpus") {
      doc = corpus_command(ctx, status);
    } else if (name == "roundtrip") {
      doc = roundtrip(ctx);
    } else if (name == "pipeline") {
      doc = pipeline(ctx);
    }
    emit(doc, opt, out);
  } catch (const CLI::Error& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << "\n";
    return kMalformed;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return status;
}

}  // namespace mahler::cli
