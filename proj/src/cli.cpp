#include "canonseq/cli.hpp"

#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "canonseq/coherence.hpp"
#include "canonseq/decision.hpp"
#include "canonseq/derivation.hpp"
#include "canonseq/kripke.hpp"
#include "canonseq/parser.hpp"
#include "canonseq/rules.hpp"

namespace canonseq::cli {

namespace {

using nlohmann::json;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CanonicalSystem load_system(const std::string& path) {
  CanonicalSystem g = load_system_file(path);
  if (auto diags = validate_system(g); !diags.empty()) {
    std::ostringstream os;
    os << "invalid system " << path << ":\n";
    for (const auto& d : diags) os << "  " << d.rule << ": " << d.message << "\n";
    throw std::runtime_error(os.str());
  }
  return g;
}

std::set<Sequent> load_assumptions(const std::string& path,
                                   const Signature& sig) {
  auto seqs = parse_sequent_lines(slurp(path), sig);
  return {seqs.begin(), seqs.end()};
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

CommandResult finish(int code, const std::string& verdict, bool as_json,
                     json report, const std::string& text) {
  CommandResult res{code, verdict, {}};
  if (as_json) {
    report["verdict"] = verdict;
    res.output = report.dump(2) + "\n";
  } else {
    res.output = text;
  }
  return res;
}

CommandResult cmd_check(const std::string& system_file, bool as_json) {
  CanonicalSystem g = load_system_file(system_file);
  auto diags = validate_system(g);
  json rep{{"command", "check"}, {"system", g.name}};
  json dl = json::array();
  std::ostringstream text;
  for (const auto& d : diags) {
    dl.push_back({{"rule", d.rule}, {"message", d.message}});
    text << d.rule << ": " << d.message << "\n";
  }
  rep["diagnostics"] = dl;
  if (diags.empty())
    return finish(0, "valid", as_json, rep, "system " + g.name + ": ok\n");
  return finish(2, "invalid", as_json, rep, text.str());
}

CommandResult cmd_coherence(const std::string& system_file, bool witness,
                            bool as_json) {
  CanonicalSystem g = load_system(system_file);
  CoherenceReport rep = is_coherent(g);
  json out{{"command", "coherence"}, {"system", g.name}};
  json pairs = json::array();
  std::ostringstream text;
  for (const auto& p : rep.pairs) {
    bool ok = std::holds_alternative<CutDerivation>(p.witness);
    json pj{{"connective", p.connective},
            {"left", p.left_index},
            {"right", p.right_index},
            {"coherent", ok}};
    if (ok) {
      pj["cuts"] = std::get<CutDerivation>(p.witness).steps.size();
    } else {
      const auto& a = std::get<SatisfyingAssignment>(p.witness);
      json vals = json::object();
      for (size_t i = 0; i < a.values.size(); ++i)
        vals["p" + std::to_string(i + 1)] = static_cast<bool>(a.values[i]);
      pj["assignment"] = vals;
    }
    pairs.push_back(pj);
    text << rule_label(false, p.connective, p.left_index) << " vs "
         << rule_label(true, p.connective, p.right_index) << ": "
         << (ok ? "inconsistent premises (coherent)"
                : "jointly satisfiable premises (incoherent)")
         << "\n";
  }
  out["pairs"] = pairs;
  if (witness && !rep.coherent) {
    auto w = strong_consistency_witness(g);
    json proof = derivation_to_json(*w.derivation);
    out["witness"] = proof;
    if (!as_json) text << proof.dump(2) << "\n";
  }
  std::string verdict = rep.coherent ? "coherent" : "incoherent";
  text << "system " << g.name << ": " << verdict << "\n";
  return finish(rep.coherent ? 0 : 1, verdict, as_json, out, text.str());
}

CommandResult cmd_decide(const std::string& system_file,
                         const std::string& goal_text,
                         const std::string& assume_file,
                         const std::string& proof_out,
                         const std::string& countermodel_out,
                         int max_closure_size, bool as_json) {
  CanonicalSystem g = load_system(system_file);
  Sequent goal = parse_sequent(goal_text, g.signature);
  std::set<Sequent> assumptions;
  if (!assume_file.empty())
    assumptions = load_assumptions(assume_file, g.signature);
  DecideOptions opts;
  opts.max_closure_size = max_closure_size;
  opts.want_countermodel = !countermodel_out.empty();
  DecisionOutcome out = decide(g, assumptions, goal, opts);
  json rep{{"command", "decide"},
           {"system", g.name},
           {"goal", to_string(goal)}};
  std::ostringstream text;
  if (out.provable) {
    json proof = derivation_to_json(*out.proof);
    rep["proof"] = proof;
    if (!proof_out.empty()) write_file(proof_out, proof.dump(2) + "\n");
    text << to_string(goal) << ": provable ("
         << count_cuts(*out.proof) << " cuts)\n";
    return finish(0, "provable", as_json, rep, text.str());
  }
  if (out.countermodel) {
    json frame = frame_to_json(*out.countermodel);
    rep["countermodel"] = frame;
    write_file(countermodel_out, frame.dump(2) + "\n");
  }
  text << to_string(goal) << ": unprovable\n";
  return finish(1, "unprovable", as_json, rep, text.str());
}

CommandResult cmd_countermodel(const std::string& system_file,
                               const std::string& goal_text,
                               const std::string& assume_file, int max_worlds,
                               const std::string& out_file, bool as_json) {
  CanonicalSystem g = load_system(system_file);
  Sequent goal = parse_sequent(goal_text, g.signature);
  std::set<Sequent> assumptions;
  if (!assume_file.empty())
    assumptions = load_assumptions(assume_file, g.signature);
  auto res = countermodel_search(g, assumptions, goal, max_worlds);
  json rep{{"command", "countermodel"},
           {"system", g.name},
           {"goal", to_string(goal)},
           {"exhaustive", res.exhaustive}};
  std::ostringstream text;
  if (res.frame) {
    json frame = frame_to_json(*res.frame);
    rep["frame"] = frame;
    if (!out_file.empty()) write_file(out_file, frame.dump(2) + "\n");
    text << "countermodel with " << res.frame->world_count() << " world(s)\n";
    if (!as_json) text << frame.dump(2) << "\n";
    return finish(0, "found", as_json, rep, text.str());
  }
  text << "no countermodel within the bound";
  if (!res.exhaustive) text << " (search budget exhausted)";
  text << "\n";
  return finish(1, "none", as_json, rep, text.str());
}

CommandResult cmd_check_proof(const std::string& system_file,
                              const std::string& proof_file,
                              const std::string& assume_file, bool s_proof,
                              bool strict, bool as_json) {
  CanonicalSystem g = load_system(system_file);
  std::set<Sequent> assumptions;
  if (!assume_file.empty())
    assumptions = load_assumptions(assume_file, g.signature);
  Derivation d =
      derivation_from_json(json::parse(slurp(proof_file)), g.signature);
  CheckResult res = check_derivation(g, assumptions, d);
  json rep{{"command", "check-proof"}, {"system", g.name}};
  std::ostringstream text;
  bool ok = res.ok;
  if (!res.ok) {
    rep["error"] = {{"path", res.node_path}, {"message", res.message}};
    if (res.expected) rep["error"]["expected"] = to_string(*res.expected);
    text << res.describe() << "\n";
  }
  if (ok && s_proof && !is_S_proof(d, assumptions)) {
    ok = false;
    rep["error"] = {{"path", ""},
                    {"message", "a cut formula does not occur in the "
                                "assumption sequents"}};
    text << "not an assumption-bounded cut proof\n";
  }
  if (ok && strict && !is_strict_proof(d)) {
    ok = false;
    rep["error"] = {{"path", ""},
                    {"message", "proof contains a negative sequent"}};
    text << "proof contains a negative sequent\n";
  }
  if (ok) text << "proof ok: " << to_string(d.conclusion) << "\n";
  return finish(ok ? 0 : 1, ok ? "accepted" : "rejected", as_json, rep,
                text.str());
}

CommandResult cmd_check_frame(const std::string& system_file,
                              const std::string& frame_file,
                              const std::string& model_of, bool as_json) {
  CanonicalSystem g = load_system(system_file);
  Semiframe f = frame_from_json(json::parse(slurp(frame_file)), g.signature);
  json rep{{"command", "check-frame"}, {"system", g.name}};
  std::ostringstream text;
  auto diags = check_semiframe(f);
  if (!diags.empty()) {
    json dl = json::array();
    for (const auto& d : diags) {
      dl.push_back(d);
      text << d << "\n";
    }
    rep["diagnostics"] = dl;
    return finish(2, "invalid", as_json, rep, text.str());
  }
  LegalityReport legal = is_legal(f, g);
  if (!legal.legal) {
    const auto& v = *legal.violation;
    rep["violation"] = {{"world", v.world}, {"rule", v.rule}};
    text << "rule " << v.rule << " violated at world " << v.world << "\n";
    return finish(1, "illegal", as_json, rep, text.str());
  }
  if (!model_of.empty()) {
    auto seqs = load_assumptions(model_of, g.signature);
    if (!is_model(f, seqs)) {
      text << "frame is legal but not a model of " << model_of << "\n";
      rep["model"] = false;
      return finish(1, "illegal", as_json, rep, text.str());
    }
    rep["model"] = true;
  }
  text << "frame ok\n";
  return finish(0, "legal", as_json, rep, text.str());
}

// Manifest lines: job <name> <command> <arg...> expect <verdict>
struct ManifestJob {
  std::string name;
  std::vector<std::string> args;
  std::string expected;
};

std::vector<std::string> split_quoted(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool in_quote = false;
  bool have = false;
  for (char c : line) {
    if (c == '"') {
      in_quote = !in_quote;
      have = true;
      continue;
    }
    if (!in_quote && std::isspace(static_cast<unsigned char>(c))) {
      if (have || !cur.empty()) out.push_back(cur);
      cur.clear();
      have = false;
      continue;
    }
    cur.push_back(c);
  }
  if (have || !cur.empty()) out.push_back(cur);
  return out;
}

std::string dirname_of(const std::string& path) {
  auto pos = path.find_last_of('/');
  return pos == std::string::npos ? std::string(".") : path.substr(0, pos);
}

bool looks_like_path_arg(const std::string& arg) {
  return arg.find(".canon") != std::string::npos ||
         arg.find(".json") != std::string::npos ||
         arg.find(".txt") != std::string::npos ||
         arg.find(".manifest") != std::string::npos;
}

CommandResult cmd_batch(const std::string& manifest_file, bool as_json) {
  std::string base = dirname_of(manifest_file);
  std::vector<ManifestJob> jobs;
  std::istringstream in(slurp(manifest_file));
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line = line.substr(0, hash);
    auto toks = split_quoted(line);
    if (toks.empty()) continue;
    if (toks.size() < 5 || toks[0] != "job" || toks[toks.size() - 2] != "expect")
      throw std::runtime_error("manifest line " + std::to_string(lineno) +
                               ": expected 'job <name> <command> <args...> "
                               "expect <verdict>'");
    ManifestJob job;
    job.name = toks[1];
    job.expected = toks.back();
    for (size_t i = 2; i + 2 < toks.size(); ++i) {
      std::string arg = toks[i];
      if (looks_like_path_arg(arg) && arg[0] != '/') arg = base + "/" + arg;
      job.args.push_back(arg);
    }
    jobs.push_back(std::move(job));
  }

  std::vector<std::future<CommandResult>> futures;
  futures.reserve(jobs.size());
  for (const auto& job : jobs)
    futures.push_back(std::async(std::launch::async, [&job] {
      try {
        return run_command(job.args);
      } catch (const std::exception& e) {
        return CommandResult{2, "error", std::string(e.what()) + "\n"};
      }
    }));

  json rep{{"command", "batch"}, {"manifest", manifest_file}};
  json results = json::array();
  std::ostringstream text;
  int failures = 0;
  for (size_t i = 0; i < jobs.size(); ++i) {
    CommandResult r = futures[i].get();
    bool match = r.verdict == jobs[i].expected;
    if (!match) ++failures;
    results.push_back({{"job", jobs[i].name},
                       {"expected", jobs[i].expected},
                       {"got", r.verdict},
                       {"pass", match}});
    text << (match ? "pass" : "FAIL") << "  " << jobs[i].name << " (expected "
         << jobs[i].expected << ", got " << r.verdict << ")\n";
  }
  rep["results"] = results;
  text << jobs.size() - failures << "/" << jobs.size() << " jobs matched\n";
  return finish(failures == 0 ? 0 : 1, failures == 0 ? "valid" : "invalid",
                as_json, rep, text.str());
}

}  // namespace

CommandResult run_command(const std::vector<std::string>& args) {
  CLI::App app{"canonical sequent system toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  app.add_flag("--json", as_json, "machine-readable output");

  std::string system_file, goal_text, assume_file, proof_out, cm_out,
      proof_file, frame_file, model_of, manifest_file, out_file;
  int max_closure = 12, max_worlds = -1;
  bool witness = false, s_proof = false, strict = false;

  auto* check = app.add_subcommand("check", "validate a system definition");
  check->add_option("system", system_file)->required();

  auto* coherence =
      app.add_subcommand("coherence", "coherence verdict for a system");
  coherence->add_option("system", system_file)->required();
  coherence->add_flag("--witness", witness,
                      "emit the strong-inconsistency derivation");

  auto* decide_cmd = app.add_subcommand("decide", "decide derivability");
  decide_cmd->add_option("system", system_file)->required();
  decide_cmd->add_option("goal", goal_text)->required();
  decide_cmd->add_option("--assume", assume_file);
  decide_cmd->add_option("--proof", proof_out);
  decide_cmd->add_option("--countermodel", cm_out);
  decide_cmd->add_option("--max-closure-size", max_closure);

  auto* cm = app.add_subcommand("countermodel", "search for a countermodel");
  cm->add_option("system", system_file)->required();
  cm->add_option("goal", goal_text)->required();
  cm->add_option("--assume", assume_file);
  cm->add_option("--max-worlds", max_worlds);
  cm->add_option("--out", out_file);

  auto* cp = app.add_subcommand("check-proof", "validate a proof object");
  cp->add_option("system", system_file)->required();
  cp->add_option("proof", proof_file)->required();
  cp->add_option("--assume", assume_file);
  cp->add_flag("--s-proof", s_proof,
               "require cut formulas to occur in the assumptions");
  cp->add_flag("--strict", strict, "require every sequent to be definite");

  auto* cf = app.add_subcommand("check-frame", "validate a frame");
  cf->add_option("system", system_file)->required();
  cf->add_option("frame", frame_file)->required();
  cf->add_option("--model-of", model_of);

  auto* batch = app.add_subcommand("batch", "run a job manifest");
  batch->add_option("manifest", manifest_file)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream os;
    os << e.what() << "\n";
    return {64, "error", os.str()};
  }

  try {
    if (check->parsed()) return cmd_check(system_file, as_json);
    if (coherence->parsed())
      return cmd_coherence(system_file, witness, as_json);
    if (decide_cmd->parsed())
      return cmd_decide(system_file, goal_text, assume_file, proof_out,
                        cm_out, max_closure, as_json);
    if (cm->parsed())
      return cmd_countermodel(system_file, goal_text, assume_file, max_worlds,
                              out_file, as_json);
    if (cp->parsed())
      return cmd_check_proof(system_file, proof_file, assume_file, s_proof,
                             strict, as_json);
    if (cf->parsed())
      return cmd_check_frame(system_file, frame_file, model_of, as_json);
    if (batch->parsed()) return cmd_batch(manifest_file, as_json);
  } catch (const IncoherentSystemError& e) {
    return {2, "incoherent", std::string(e.what()) + "\n"};
  } catch (const std::exception& e) {
    return {2, "error", std::string(e.what()) + "\n"};
  }
  return {64, "error", "no subcommand\n"};
}

int run(const std::vector<std::string>& args) {
  CommandResult res = run_command(args);
  if (res.exit_code == 0)
    std::cout << res.output;
  else
    std::cerr << res.output;
  return res.exit_code;
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args);
}

}  // namespace canonseq::cli
