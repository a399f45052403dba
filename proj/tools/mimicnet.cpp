// mimicnet command-line front end.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mimicnet.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace mimicnet;

namespace {

std::string read_text(const std::string& path) { return detail::read_file(path); }

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    detail::write_file(path, text);
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::uint64_t parse_uint(const std::string& flag, const std::string& text) {
  try {
    std::size_t used = 0;
    auto v = std::stoull(text, &used, 0);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw UsageError(flag + ": expected an unsigned integer, got '" + text + "'");
  }
}

template <typename T>
std::vector<T> parse_list(const std::string& flag, const std::string& text) {
  std::vector<T> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    if (item.empty()) continue;
    out.push_back(static_cast<T>(parse_uint(flag, item)));
  }
  if (out.empty()) throw UsageError(flag + ": empty list");
  return out;
}

std::string hex(std::uint64_t v) {
  std::ostringstream s;
  s << "0x" << std::hex << v;
  return s.str();
}

std::uint64_t digest(const std::vector<double>& xs) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (double x : xs) {
    std::uint64_t bits = 0;
    std::memcpy(&bits, &x, sizeof bits);
    for (int i = 0; i < 8; ++i) {
      h ^= (bits >> (8 * i)) & 0xFFU;
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

TruthTable load_model(const std::string& spec, std::string& name) {
  if (fs::exists(spec)) {
    name = fs::path(spec).stem().string();
    return parse_truth_table(read_text(spec));
  }
  name = spec;
  std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return sbox_table(name);
}

CostConfig load_cost(const std::string& path, std::string& source) {
  std::string p = path;
  if (p.empty()) {
    if (const char* env = std::getenv("MIMICNET_COST_CONFIG"); env && *env) p = env;
  }
  if (p.empty()) {
    source = "defaults";
    return CostConfig{};
  }
  source = p;
  return parse_cost_config(read_text(p));
}

json cost_json(const CostConfig& c) {
  json pairs = json::array();
  for (const auto& [k, v] : c.pairs) pairs.push_back({to_string(k.first), to_string(k.second), v});
  return {{"p_conn", c.p_conn},
          {"p_incompat", c.p_incompat},
          {"pad_cost", c.pad_cost},
          {"tied_input_cost", c.tied_input_cost},
          {"pairs", pairs},
          {"hash", hex(c.hash())}};
}

Leakage parse_leakage(bool hd) { return hd ? Leakage::HD : Leakage::HW; }

Aggregation parse_agg(const std::string& s) {
  if (s == "sum") return Aggregation::Sum;
  if (s == "max") return Aggregation::Max;
  throw UsageError("--agg: expected sum or max, got '" + s + "'");
}

// --device x.bench or --design prefix (true view as fabricated)
Netlist load_device(const std::string& device, const std::string& design) {
  if (!device.empty() && !design.empty()) throw UsageError("--device and --design are mutually exclusive");
  if (!device.empty()) return parse_bench(read_text(device));
  if (!design.empty()) return deployed_netlist(load_design(design));
  throw UsageError("one of --device or --design is required");
}

json base_report(const std::string& command) {
  return {{"tool", "mimicnet"}, {"version", kVersion}, {"command", command}};
}

// ---------------------------------------------------------------------------

struct SynthArgs {
  std::string sbox, table, out;
  bool nand = false;
};

int cmd_synth(const SynthArgs& a) {
  if (a.sbox.empty() == a.table.empty()) throw UsageError("exactly one of --sbox or --table is required");
  TruthTable t = a.sbox.empty() ? parse_truth_table(read_text(a.table)) : sbox_table(a.sbox);
  Netlist n = synth_sop(t);
  if (a.nand) n = tech_map_nand(n);
  write_text(a.out, write_bench(n));
  return 0;
}

int cmd_levelize(const std::string& path) {
  Netlist n = parse_bench(read_text(path));
  LevelMap lv = levelize(n);
  for (std::size_t k = 0; k < lv.layers.size(); ++k) {
    std::cout << k << '\t' << lv.layers[k].size() << '\t';
    for (std::size_t i = 0; i < lv.layers[k].size(); ++i) std::cout << (i ? " " : "") << n.node(lv.layers[k][i]).name;
    std::cout << '\n';
  }
  return 0;
}

struct DisguiseArgs {
  std::string f, a, out, cost, input_map, pad = "auto";
  std::uint64_t seed = 0;
  std::size_t pairs = 4096;
  unsigned jobs = 1;
};

json validation_json(const ValidationReport& r) {
  json j = {{"ok", r.ok()},
            {"containment", r.containment},
            {"containment_detail", r.containment_detail},
            {"equivalence", r.equivalence},
            {"equivalence_detail", r.equivalence_detail},
            {"dummy_isolation", r.dummy_isolation},
            {"isolation_detail", r.isolation_detail},
            {"kinds_plausible", r.kinds_plausible},
            {"carrier_chains", r.carrier_chains},
            {"extra_nodes", r.extra_nodes},
            {"dummies", r.dummies}};
  if (r.verdict) {
    j["vectors_tested"] = r.verdict->vectors_tested;
    j["exhaustive"] = r.verdict->exhaustive;
  }
  return j;
}

int cmd_disguise(const DisguiseArgs& a) {
  Netlist f = parse_bench(read_text(a.f));
  Netlist g = parse_bench(read_text(a.a));
  std::string cost_source;
  CostConfig cfg = load_cost(a.cost, cost_source);
  DisguiseOptions opt;
  if (a.pad == "none") {
    opt.padding = Padding::None;
  } else if (a.pad == "count") {
    opt.padding = Padding::Count;
  } else if (a.pad == "align") {
    opt.padding = Padding::Align;
  } else if (a.pad == "auto") {
    opt.padding = Padding::Auto;
  } else {
    throw UsageError("--pad: expected none, count, align or auto");
  }
  if (!a.input_map.empty()) opt.match.input_map = parse_name_map(read_text(a.input_map));
  opt.match.jobs = a.jobs;

  DisguiseResult r = disguise(f, g, cfg, opt);
  save_design(r.design, a.out);
  ValidationReport v = validate_design(r.design, f, g, a.jobs);
  Overhead o = overhead(r.design, g, a.pairs, a.seed, a.jobs);

  json layers = json::array();
  for (const auto& l : r.matching.layers) {
    layers.push_back({{"level", l.level},
                      {"functional", l.functional_nodes},
                      {"appearance", l.appearance_nodes},
                      {"cost", l.cost},
                      {"missing_edges", l.missing_edges}});
  }
  json rep = base_report("disguise");
  rep["parameters"] = {{"functional", a.f},   {"appearance", a.a}, {"output", a.out},   {"cost_source", cost_source},
                       {"input_map", a.input_map}, {"pad", a.pad}, {"seed", a.seed}, {"power_pairs", a.pairs}};
  rep["cost_config"] = cost_json(cfg);
  rep["matching"] = {{"id", hex(r.matching.id())},
                     {"total_cost", r.matching.total_cost},
                     {"missing_edges", r.matching.missing_edges},
                     {"padding", to_string(r.padding_used)},
                     {"pad_buffers", r.pad_buffers},
                     {"layers", layers}};
  rep["files"] = {a.out + ".bench", a.out + ".cmap", a.out + ".outmap", a.out + ".inmap"};
  rep["validation"] = validation_json(v);
  rep["ppa"] = {{"area_ratio", o.area_ratio},
                {"power_ratio", o.power_ratio},
                {"extra_nodes", o.extra_nodes},
                {"carrier_chains", o.carrier_chains}};
  detail::write_file(a.out + ".json", dump(rep));
  std::cout << "disguise " << (v.ok() ? "ok" : "FAILED") << ": " << r.design.apparent.size() << " nodes, "
            << v.carrier_chains << " carriers, " << v.dummies << " dummies, padding " << to_string(r.padding_used)
            << ", equivalence " << v.equivalence_detail << '\n';
  return v.ok() ? 0 : 1;
}

struct VerifyArgs {
  std::string design, against;
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
};

int cmd_verify(const VerifyArgs& a) {
  DeceptiveDesign d = load_design(a.design);
  Netlist f = parse_bench(read_text(a.against));
  Netlist tv = true_view(d.apparent, d.covert);
  Verdict v = equiv_check(f, tv, d.io_map(), a.samples, a.seed, a.jobs);
  if (v.pass) {
    std::cout << "PASS " << (v.exhaustive ? "exhaustive" : "random (probabilistic)") << ", " << v.vectors_tested
              << " vectors\n";
    return 0;
  }
  const auto& c = *v.counterexample;
  std::cout << "FAIL counterexample " << c.hex() << ": functional " << hex(c.out1) << ", design " << hex(c.out2)
            << '\n';
  return 1;
}

struct AttackArgs {
  std::string device, design, model, out, bits, agg = "sum", key, trace_list, variant = "attack";
  std::size_t traces = 0, experiments = 1;
  double sigma = 0;
  std::uint64_t seed = 0;
  bool hd = false, no_delta = false;
  unsigned jobs = 1;
};

int cmd_attack(const AttackArgs& a) {
  Netlist n = load_device(a.device, a.design);
  std::string model_name;
  TruthTable model = load_model(a.model, model_name);
  if (a.traces == 0) throw UsageError("--traces must be positive");
  Device dev(n, parse_uint("--key", a.key));
  std::vector<unsigned> bits;
  if (!a.bits.empty()) bits = parse_list<unsigned>("--bits", a.bits);
  TraceSet ts = simulate_traces(dev, a.traces, a.sigma, parse_leakage(a.hd), a.seed, a.jobs);
  AttackResult r = dpa_attack(ts, model, model_name, bits, parse_agg(a.agg), a.jobs);

  json rep = base_report("attack");
  rep["parameters"] = {{"device", a.device.empty() ? a.design : a.device},
                       {"model", model_name},
                       {"key", hex(dev.key())},
                       {"traces", a.traces},
                       {"sigma", a.sigma},
                       {"leakage", to_string(ts.model)},
                       {"aggregation", to_string(r.aggregation)},
                       {"target_bits", r.target_bits},
                       {"seed", a.seed}};
  rep["rank_convention"] = "1-indexed; ties broken by smaller hypothesis";
  rep["rank_max"] = r.rank_max;
  rep["true_key_embedded"] = hex(r.true_key);
  rep["rank"] = r.rank;
  rep["min_rank_over_extensions"] = r.min_rank_over_extensions;
  rep["time_points"] = r.time_points;
  rep["trace_digest"] = hex(digest(ts.samples));
  rep["scores"] = r.scores;
  if (!a.no_delta) {
    json delta = json::array();
    for (std::uint64_t k = 0; k < r.rank_max; ++k) {
      json per_bit = json::array();
      for (std::size_t b = 0; b < r.target_bits.size(); ++b) {
        std::vector<double> row(r.time_points);
        for (std::size_t t = 0; t < r.time_points; ++t) row[t] = r.delta_at(k, b, t);
        per_bit.push_back(row);
      }
      delta.push_back(per_bit);
    }
    rep["differential_traces"] = delta;
  }
  write_text(a.out, dump(rep));
  return 0;
}

int cmd_ge(const AttackArgs& a) {
  Netlist n = load_device(a.device, a.design);
  std::string model_name;
  TruthTable model = load_model(a.model, model_name);
  GeSpec spec;
  spec.trace_counts = parse_list<std::size_t>("--traces", a.trace_list);
  spec.experiments = a.experiments;
  spec.sigma = a.sigma;
  spec.leakage = parse_leakage(a.hd);
  if (!a.bits.empty()) spec.target_bits = parse_list<unsigned>("--bits", a.bits);
  spec.aggregation = parse_agg(a.agg);
  spec.seed = a.seed;
  spec.jobs = a.jobs;
  auto rows = guessing_entropy(n, model, model_name, spec);
  std::ostringstream csv;
  csv << "traces,ge,ge_bits,variant\n";
  csv.precision(17);
  for (const auto& r : rows) csv << r.traces << ',' << r.ge << ',' << r.ge_bits << ',' << a.variant << '\n';
  write_text(a.out, csv.str());
  return 0;
}

struct ClassifyArgs {
  std::string train, target, design, as, mimic, out;
  std::size_t rounds = 2;
  unsigned jobs = 1;
};

int cmd_classify(const ClassifyArgs& a) {
  std::vector<Netlist> nets;
  std::vector<std::string> labels;
  std::vector<fs::path> dirs;
  for (const auto& e : fs::directory_iterator(a.train)) {
    if (e.is_directory()) dirs.push_back(e.path());
  }
  std::sort(dirs.begin(), dirs.end());
  for (const auto& dir : dirs) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir)) {
      if (e.path().extension() == ".bench") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& p : files) {
      nets.push_back(parse_bench(read_text(p.string())));
      labels.push_back(dir.filename().string());
    }
  }
  std::vector<LabeledNetlist> corpus;
  for (std::size_t i = 0; i < nets.size(); ++i) corpus.push_back({&nets[i], labels[i]});
  if (!a.target.empty() && !a.design.empty()) throw UsageError("--target and --design are mutually exclusive");
  if (a.target.empty() && a.design.empty()) throw UsageError("one of --target or --design is required");
  Netlist target = a.design.empty() ? parse_bench(read_text(a.target)) : load_design(a.design).apparent;

  Classifier c = train_centroids(corpus, a.rounds, a.jobs);
  auto distractors = [&](const std::string& label) {
    std::vector<LabeledNetlist> out;
    for (const auto& x : corpus) {
      if (x.second != label) out.push_back(x);
    }
    return out;
  };
  json rep = base_report("classify");
  rep["parameters"] = {{"train", a.train},
                       {"target", a.design.empty() ? a.target : a.design},
                       {"as", a.as},
                       {"mimic", a.mimic},
                       {"rounds", a.rounds}};
  rep["classes"] = c.labels;
  ClassScores expose = classify_eval(c, target, a.as, distractors(a.as), a.jobs);
  rep["f1"] = expose.f1;
  std::map<std::string, std::size_t> votes;
  for (const auto& p : expose.target_predictions) ++votes[p];
  rep["target_predictions"] = votes;
  if (!a.mimic.empty()) {
    ClassScores mimicry = classify_eval(c, target, a.mimic, distractors(a.mimic), a.jobs);
    const double f1_m = mimicry.f1.at(a.mimic);
    const double f1_e = expose.f1.at(a.as);
    GnnScore s = score_gnn(f1_m, f1_e);
    rep["f1_mimicry"] = f1_m;
    rep["f1_expose"] = f1_e;
    rep["score_gnn"] = s.infinite ? json("inf") : json(s.value);
  }
  write_text(a.out, dump(rep));
  return 0;
}

struct PpaArgs {
  std::string design, against, netlist, out;
  std::size_t pairs = 4096;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
};

int cmd_ppa(const PpaArgs& a) {
  json rep = base_report("ppa");
  rep["parameters"] = {{"design", a.design}, {"against", a.against}, {"netlist", a.netlist}, {"pairs", a.pairs}, {"seed", a.seed}};
  if (!a.netlist.empty()) {
    Netlist n = parse_bench(read_text(a.netlist));
    rep["area"] = area_proxy(n);
    rep["power"] = power_proxy(n, a.pairs, a.seed, a.jobs);
  } else {
    if (a.design.empty() || a.against.empty()) throw UsageError("--design and --against are required without --netlist");
    DeceptiveDesign d = load_design(a.design);
    Netlist g = parse_bench(read_text(a.against));
    Overhead o = overhead(d, g, a.pairs, a.seed, a.jobs);
    rep["area_ratio"] = o.area_ratio;
    rep["power_ratio"] = o.power_ratio;
    rep["extra_nodes"] = o.extra_nodes;
    rep["carrier_chains"] = o.carrier_chains;
  }
  write_text(a.out, dump(rep));
  return 0;
}

struct ReportArgs {
  std::string leak, deceptive, classify, ppa, disguise, out;
};

json read_json(const std::string& path) {
  try {
    return json::parse(read_text(path));
  } catch (const json::exception& e) {
    throw Error("'" + path + "' is not a JSON report: " + e.what());
  }
}

int cmd_report(const ReportArgs& a) {
  json leak = read_json(a.leak);
  json dec = read_json(a.deceptive);
  json cls = read_json(a.classify);
  json ppa = read_json(a.ppa);
  json rep = base_report("report");
  rep["inputs"] = {{"leak", a.leak}, {"deceptive", a.deceptive}, {"classify", a.classify}, {"ppa", a.ppa}, {"disguise", a.disguise}};
  const double rank_max = dec.at("rank_max").get<double>();
  const double rank_d = dec.at("rank").get<double>();
  const double rank_l = leak.at("rank").get<double>();
  rep["dpa"] = {{"rank_leak", rank_l},
                {"rank_disguise", rank_d},
                {"rank_max", rank_max},
                {"min_rank_over_extensions", dec.at("min_rank_over_extensions")},
                {"score_dpa", score_dpa(rank_d, rank_l, rank_max)},
                {"leak_parameters", leak.at("parameters")},
                {"deceptive_parameters", dec.at("parameters")}};
  if (!cls.contains("f1_mimicry")) throw Error("classify report lacks f1_mimicry; run classify with --mimic");
  rep["gnn"] = {{"f1_mimicry", cls.at("f1_mimicry")},
                {"f1_expose", cls.at("f1_expose")},
                {"score_gnn", cls.at("score_gnn")},
                {"parameters", cls.at("parameters")}};
  rep["overhead"] = {{"area_ratio", ppa.at("area_ratio")},
                     {"power_ratio", ppa.at("power_ratio")},
                     {"extra_nodes", ppa.at("extra_nodes")},
                     {"carrier_chains", ppa.at("carrier_chains")}};
  if (!a.disguise.empty()) {
    json d = read_json(a.disguise);
    rep["disguise"] = {{"matching", d.at("matching")}, {"validation", d.at("validation")}, {"cost_config", d.at("cost_config")}};
  }
  write_text(a.out, dump(rep));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mimicnet: disguise S-box netlists as other circuits and evaluate the disguise"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  SynthArgs synth;
  auto* s_synth = app.add_subcommand("synth", "truth table or named S-box -> .bench");
  s_synth->add_option("--sbox", synth.sbox, "named S-box (" + [] {
    std::string s;
    for (const auto& n : sbox_names()) s += (s.empty() ? "" : ", ") + n;
    return s;
  }() + ")");
  s_synth->add_option("--table", synth.table, "truth table file");
  s_synth->add_flag("--nand", synth.nand, "map onto NAND2/INV");
  s_synth->add_option("-o,--output", synth.out, "output .bench (default stdout)");

  std::string lv_path;
  auto* s_lv = app.add_subcommand("levelize", "print level<TAB>count<TAB>names per layer");
  s_lv->add_option("netlist", lv_path, ".bench file")->required();

  DisguiseArgs dis;
  auto* s_dis = app.add_subcommand("disguise", "hide a functional netlist inside an appearance netlist");
  s_dis->add_option("-f,--functional", dis.f, "functional .bench")->required();
  s_dis->add_option("-a,--appearance", dis.a, "appearance .bench")->required();
  s_dis->add_option("-o,--output", dis.out, "output prefix")->required();
  s_dis->add_option("--cost", dis.cost, "cost configuration file (default: $MIMICNET_COST_CONFIG or built-in)");
  s_dis->add_option("--input-map", dis.input_map, "functional=appearance input pairs");
  s_dis->add_option("--pad", dis.pad, "none|count|align|auto")->capture_default_str();
  s_dis->add_option("--seed", dis.seed, "seed for the power proxy stimulus")->required();
  s_dis->add_option("--pairs", dis.pairs, "power proxy input pairs")->capture_default_str();
  s_dis->add_option("--jobs", dis.jobs, "worker threads")->capture_default_str();

  VerifyArgs ver;
  auto* s_ver = app.add_subcommand("verify", "check a design against its functional netlist");
  s_ver->add_option("--design", ver.design, "design prefix")->required();
  s_ver->add_option("--against", ver.against, "functional .bench")->required();
  s_ver->add_option("--samples", ver.samples, "random samples beyond 20 inputs")->capture_default_str();
  s_ver->add_option("--seed", ver.seed, "seed for random mode")->capture_default_str();
  s_ver->add_option("--jobs", ver.jobs, "worker threads")->capture_default_str();

  AttackArgs att;
  auto* s_att = app.add_subcommand("attack", "simulate traces and run difference-of-means DPA");
  s_att->add_option("--device", att.device, "device .bench");
  s_att->add_option("--design", att.design, "design prefix (attacks its true view)");
  s_att->add_option("--key", att.key, "device key")->required();
  s_att->add_option("--model", att.model, "S-box name or truth table file")->required();
  s_att->add_option("--traces", att.traces, "number of traces")->required();
  s_att->add_option("--sigma", att.sigma, "noise standard deviation")->capture_default_str();
  s_att->add_option("--seed", att.seed, "trace seed")->required();
  s_att->add_flag("--hd", att.hd, "Hamming-distance leakage (default Hamming weight)");
  s_att->add_option("--bits", att.bits, "comma-separated target bits (default all)");
  s_att->add_option("--agg", att.agg, "score aggregation: sum|max")->capture_default_str();
  s_att->add_flag("--no-delta", att.no_delta, "omit differential traces from the report");
  s_att->add_option("--jobs", att.jobs, "worker threads")->capture_default_str();
  s_att->add_option("-o,--output", att.out, "report path (default stdout)");

  AttackArgs ge;
  auto* s_ge = app.add_subcommand("ge", "guessing-entropy curve as CSV");
  s_ge->add_option("--device", ge.device, "device .bench");
  s_ge->add_option("--design", ge.design, "design prefix (attacks its true view)");
  s_ge->add_option("--model", ge.model, "S-box name or truth table file")->required();
  s_ge->add_option("--traces", ge.trace_list, "comma-separated trace counts")->required();
  s_ge->add_option("--experiments", ge.experiments, "experiments per point")->capture_default_str();
  s_ge->add_option("--sigma", ge.sigma, "noise standard deviation")->capture_default_str();
  s_ge->add_option("--seed", ge.seed, "root seed")->required();
  s_ge->add_flag("--hd", ge.hd, "Hamming-distance leakage");
  s_ge->add_option("--bits", ge.bits, "comma-separated target bits (default all)");
  s_ge->add_option("--agg", ge.agg, "score aggregation: sum|max")->capture_default_str();
  s_ge->add_option("--variant", ge.variant, "label for the variant column")->capture_default_str();
  s_ge->add_option("--jobs", ge.jobs, "worker threads")->capture_default_str();
  s_ge->add_option("-o,--output", ge.out, "CSV path (default stdout)");

  ClassifyArgs cls;
  auto* s_cls = app.add_subcommand("classify", "structural node classification of a netlist");
  s_cls->add_option("--train", cls.train, "directory of label-named subdirectories of .bench files")->required()->check(CLI::ExistingDirectory);
  s_cls->add_option("--target", cls.target, "target .bench");
  s_cls->add_option("--design", cls.design, "design prefix (classifies its apparent view)");
  s_cls->add_option("--as", cls.as, "true class of the target")->required();
  s_cls->add_option("--mimic", cls.mimic, "class the target imitates; adds F1_mimicry and Score_GNN");
  s_cls->add_option("--rounds", cls.rounds, "feature refinement rounds")->capture_default_str();
  s_cls->add_option("--jobs", cls.jobs, "worker threads")->capture_default_str();
  s_cls->add_option("-o,--output", cls.out, "report path (default stdout)");

  PpaArgs ppa;
  auto* s_ppa = app.add_subcommand("ppa", "area and power proxies");
  s_ppa->add_option("--design", ppa.design, "design prefix");
  s_ppa->add_option("--against", ppa.against, "appearance .bench");
  s_ppa->add_option("--netlist", ppa.netlist, "single netlist instead of a design");
  s_ppa->add_option("--pairs", ppa.pairs, "random input pairs")->capture_default_str();
  s_ppa->add_option("--seed", ppa.seed, "stimulus seed")->required();
  s_ppa->add_option("--jobs", ppa.jobs, "worker threads")->capture_default_str();
  s_ppa->add_option("-o,--output", ppa.out, "report path (default stdout)");

  ReportArgs rep;
  auto* s_rep = app.add_subcommand("report", "merge attack, classify and ppa reports");
  s_rep->add_option("--leak", rep.leak, "attack report, correct model")->required();
  s_rep->add_option("--deceptive", rep.deceptive, "attack report, appearance model")->required();
  s_rep->add_option("--classify", rep.classify, "classify report with --mimic")->required();
  s_rep->add_option("--ppa", rep.ppa, "ppa report")->required();
  s_rep->add_option("--disguise", rep.disguise, "disguise report");
  s_rep->add_option("-o,--output", rep.out, "report path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (s_synth->parsed()) return cmd_synth(synth);
    if (s_lv->parsed()) return cmd_levelize(lv_path);
    if (s_dis->parsed()) return cmd_disguise(dis);
    if (s_ver->parsed()) return cmd_verify(ver);
    if (s_att->parsed()) return cmd_attack(att);
    if (s_ge->parsed()) return cmd_ge(ge);
    if (s_cls->parsed()) return cmd_classify(cls);
    if (s_ppa->parsed()) return cmd_ppa(ppa);
    if (s_rep->parsed()) return cmd_report(rep);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
