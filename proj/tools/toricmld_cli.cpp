// toricmld: compute / prove / sweep / lemmas
// exit codes: 0 ok, 1 a mathematical check failed, 2 bad input or usage

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "toricmld/instance_io.hpp"

using namespace toric;

namespace {

constexpr int kOk = 0;
constexpr int kMathFailure = 1;
constexpr int kUsage = 2;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidDocument, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidParameters, "cannot write " + path);
  out << text;
}

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::NotLogQGorenstein:
    case ErrorCode::CheckFailed:
    case ErrorCode::ValueGroupMismatch:
      return kMathFailure;
    default:
      return kUsage;
  }
}

int report_error(const Error& e) {
  std::cerr << "error: " << to_string(e.code()) << ": " << e.detail() << "\n";
  return exit_code_for(e.code());
}

ToricLogPair load_pair(const std::string& path) {
  Instance inst = parse_instance(slurp(path));
  return validate_pair(inst.dim, inst.rays, inst.coeffs);
}

int cmd_compute(const std::string& input, const std::string& format) {
  LogCanonicalReport rep = compute_mld(load_pair(input));
  std::cout << (format == "text" ? report_text(rep) : report_json(rep));
  return kOk;
}

int cmd_prove(const std::string& input, const std::string& trace_path) {
  ProofTrace tr = run_pipeline(load_pair(input));
  std::string text = serialize_trace(tr);
  if (trace_path.empty()) {
    std::cout << text;
  } else {
    write_file(trace_path, text);
    std::cout << "j: " << to_string(tr.j) << "\ngamma: " << to_string(tr.gamma)
              << "\nvol(P): " << to_string(tr.mk.body_volume) << "\n";
  }
  if (const CheckResult* f = tr.first_failure()) {
    std::cerr << "check failed: " << f->name << " " << f->detail << "\n";
    return kMathFailure;
  }
  std::cout << "all checks pass\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Index, mld and the n <= c_d q^d bound for toric log pairs"};
  app.require_subcommand(1);

  std::string input, format = "json", trace_path;
  auto* compute = app.add_subcommand("compute", "n, mld and q of one instance");
  compute->add_option("input", input, "instance JSON")->required();
  compute->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));

  auto* prove = app.add_subcommand("prove", "run every step of the proof on one klt instance");
  prove->add_option("input", input, "instance JSON")->required();
  prove->add_option("--trace", trace_path, "write the trace here instead of stdout");

  std::string family, dims_text, out_csv, out_json, list_path;
  long max_r = 0, L = 1, count = 0, max_entry = 2;
  std::uint64_t seed = 0;
  bool include_one = false, with_oracle = false;
  auto* sw = app.add_subcommand("sweep", "run a family and check the bound on every row");
  sw->add_option("--family", family)->required();
  sw->add_option("--max-r", max_r);
  sw->add_option("--dims", dims_text, "comma separated, e.g. 3,4");
  sw->add_option("--L", L);
  auto* seed_opt = sw->add_option("--seed", seed);
  sw->add_option("--count", count);
  sw->add_option("--max-entry", max_entry);
  sw->add_flag("--include-one", include_one);
  sw->add_flag("--oracle", with_oracle, "also compare with the direct slab search");
  sw->add_option("--input", list_path, "instance list for explicit_list");
  sw->add_option("--out", out_csv, "CSV path");
  sw->add_option("--json", out_json, "JSON report path");

  std::string check;
  std::size_t dim = 2, samples = 100;
  std::uint64_t lemma_seed = 1;
  auto* lem = app.add_subcommand("lemmas", "randomized lemma checks");
  lem->add_option("--check", check)->required()->check(CLI::IsMember({"vo", "lv", "minkowski"}));
  lem->add_option("--dim", dim);
  lem->add_option("--samples", samples);
  lem->add_option("--seed", lemma_seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (compute->parsed()) return cmd_compute(input, format);
    if (prove->parsed()) return cmd_prove(input, trace_path);

    if (sw->parsed()) {
      FamilySpec spec;
      spec.kind = parse_family_kind(family);
      spec.max_r = max_r;
      spec.L = L;
      spec.count = count;
      spec.max_entry = max_entry;
      spec.include_one = include_one;
      spec.with_oracle = with_oracle;
      if (seed_opt->count() > 0) spec.seed = seed;
      std::stringstream ds(dims_text);
      std::string tok;
      while (std::getline(ds, tok, ',')) {
        try {
          spec.dims.push_back(std::stoul(tok));
        } catch (const std::exception&) {
          throw Error(ErrorCode::InvalidParameters, "bad --dims entry '" + tok + "'");
        }
      }
      if (spec.kind == FamilyKind::ExplicitList) {
        if (list_path.empty()) throw Error(ErrorCode::InvalidParameters, "explicit_list needs --input");
        spec.instances = parse_instance_list(slurp(list_path));
      }
      SweepReport rep = sweep(spec);
      if (!out_csv.empty()) write_file(out_csv, sweep_csv(rep));
      if (!out_json.empty()) write_file(out_json, sweep_json(rep));
      std::cout << sweep_summary(rep);
      return rep.counterexamples.empty() ? kOk : kMathFailure;
    }

    if (lem->parsed()) {
      LemmaReport rep = run_lemma_suite(parse_lemma_kind(check), dim, samples, lemma_seed);
      std::cout << lemma_summary(rep);
      return rep.ok() ? kOk : kMathFailure;
    }
  } catch (const Error& e) {
    return report_error(e);
  }
  return kUsage;
}
