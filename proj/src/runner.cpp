#include "posqbf/runner.hpp"

#include <fcntl.h>
#include <signal.h>
#include <sys/resource.h>
#include <sys/stat.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <regex>
#include <sstream>
#include <thread>

#include "posqbf/encode_explicit.hpp"
#include "posqbf/encode_lifted.hpp"
#include "posqbf/evaluate.hpp"
#include "posqbf/oracle.hpp"
#include "posqbf/preprocess.hpp"
#include "posqbf/qbf_io.hpp"

namespace posqbf {

namespace {

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

double elapsed_s(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

QbfCnf trivial_true_cnf() {
  QbfCnf f;
  f.num_vars = 1;
  f.prefix = {{Quant::Exists, {1}}};
  f.clauses = {{1}};
  return f;
}

bool is_claim_free(const HexBoard& b) {
  return std::all_of(b.cells.begin(), b.cells.end(), [](Stone s) { return s == Stone::Empty; });
}

GameInstance httt_game(const HtttSpec& h) {
  GameInstance g;
  g.num_positions = h.board_size * h.board_size;
  g.win_sets = httt_win_sets(h.shape, h.board_size);
  g.canonicalize();
  return g;
}

}  // namespace

EncName parse_enc_name(const std::string& s) {
  const std::string k = lower(s);
  if (k == "ea") return EncName::EA;
  if (k == "en") return EncName::EN;
  if (k == "et") return EncName::ET;
  if (k == "la") return EncName::LA;
  if (k == "ln") return EncName::LN;
  if (k == "sa") return EncName::SA;
  if (k == "sn") return EncName::SN;
  if (k == "httt-sn" || k == "httt_sn") return EncName::HTTT_SN;
  throw GameError("unknown encoding '" + s + "' (expected ea|en|et|la|ln|sa|sn|httt-sn)");
}

std::string to_string(EncName e) {
  switch (e) {
    case EncName::EA: return "EA";
    case EncName::EN: return "EN";
    case EncName::ET: return "ET";
    case EncName::LA: return "LA";
    case EncName::LN: return "LN";
    case EncName::SA: return "SA";
    case EncName::SN: return "SN";
    default: return "HTTT-SN";
  }
}

FormulaFormat parse_format(const std::string& s) {
  const std::string k = lower(s);
  if (k == "qdimacs") return FormulaFormat::Qdimacs;
  if (k == "qcir") return FormulaFormat::Qcir;
  throw GameError("unknown format '" + s + "' (expected qdimacs|qcir)");
}

std::string to_string(FormulaFormat f) {
  return f == FormulaFormat::Qdimacs ? "qdimacs" : "qcir";
}

FormulaFormat default_format(EncName e) {
  switch (e) {
    case EncName::EA:
    case EncName::EN:
    case EncName::ET: return FormulaFormat::Qdimacs;
    default: return FormulaFormat::Qcir;
  }
}

std::string to_string(RunResult r) {
  switch (r) {
    case RunResult::SAT: return "SAT";
    case RunResult::UNSAT: return "UNSAT";
    case RunResult::TIMEOUT: return "TIMEOUT";
    case RunResult::MEMOUT: return "MEMOUT";
    default: return "ERROR";
  }
}

InstanceSpec load_instance(const std::string& spec, const std::string& base_dir,
                           const std::vector<Polyomino>& shapes) {
  InstanceSpec out{spec, HexBoard{}};
  if (spec.rfind("empty", 0) == 0 && spec.size() > 5 &&
      std::all_of(spec.begin() + 5, spec.end(),
                  [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    out.value = HexBoard(std::stoi(spec.substr(5)));
    return out;
  }
  if (spec.rfind("httt:", 0) == 0) {
    const size_t colon = spec.find(':', 5);
    if (colon == std::string::npos || colon + 1 >= spec.size())
      throw ParseError("achievement-game spec must look like httt:<shape>:<size>", 0);
    const std::string name = spec.substr(5, colon - 5);
    int size = 0;
    try {
      size = std::stoi(spec.substr(colon + 1));
    } catch (const std::exception&) {
      throw ParseError("bad board size in '" + spec + "'", 0);
    }
    for (const auto& s : shapes) {
      if (s.name == name) {
        out.value = HtttSpec{s, size};
        return out;
      }
    }
    throw GameError("unknown shape '" + name + "'");
  }

  std::string path = spec;
  if (!base_dir.empty() && !spec.empty() && spec.front() != '/') path = base_dir + "/" + spec;
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  // sniff: first significant token decides the format
  std::istringstream lines(text);
  std::string line, token;
  while (std::getline(lines, line)) {
    std::istringstream ls(line);
    if (!(ls >> token) || token == "c") continue;
    std::istringstream whole(text);
    if (token == "p") {
      out.value = read_ghex(whole);
      return out;
    }
    if (token == "size" || token == "black" || token == "white") {
      out.value = read_hex_board(whole);
      return out;
    }
    throw ParseError("unrecognized instance file '" + path + "' (expected a board or a graph)", 0);
  }
  throw ParseError("instance file '" + path + "' is empty", 0);
}

std::vector<Polyomino> merged_shape_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  std::vector<Polyomino> merged = builtin_shapes();
  for (const Polyomino& p : parse_shapes(buf.str())) {
    auto it = std::find_if(merged.begin(), merged.end(),
                           [&](const Polyomino& q) { return q.name == p.name; });
    if (it != merged.end())
      *it = p;
    else
      merged.push_back(p);
  }
  return merged;
}

Encoded encode_instance(const InstanceSpec& inst, EncName enc, int depth, FormulaFormat format,
                        const EncodeTweaks& tweaks) {
  if (depth <= 0 || depth % 2 == 0)
    throw QbfError("depth must be a positive odd number, got " + std::to_string(depth));
  Encoded out;
  out.format = format;
  QbfCnf cnf;
  QbfCircuit circuit;
  bool native_cnf = true;

  const auto from_game = [&](const GameInstance& game) {
    switch (enc) {
      case EncName::EA: {
        auto e = encode_ea(game, depth);
        cnf = std::move(e.cnf);
        out.warnings = std::move(e.warnings);
        break;
      }
      case EncName::LA: {
        auto e = encode_la(game, depth);
        circuit = std::move(e.circuit);
        out.warnings = std::move(e.warnings);
        native_cnf = false;
        break;
      }
      default: {  // SA
        auto e = encode_sa(game, depth);
        circuit = std::move(e.circuit);
        out.warnings = std::move(e.warnings);
        native_cnf = false;
        break;
      }
    }
  };
  const auto from_graph = [&](const GeneralizedHexInstance& g) {
    switch (enc) {
      case EncName::EN: {
        auto e = encode_en(g, depth);
        cnf = std::move(e.cnf);
        out.warnings = std::move(e.warnings);
        break;
      }
      case EncName::ET: {
        auto e = encode_et(g, depth);
        cnf = std::move(e.cnf);
        out.warnings = std::move(e.warnings);
        break;
      }
      case EncName::LN: {
        auto e = encode_ln(tweaks.stutter ? stutter_closure(g) : g, depth);
        circuit = std::move(e.circuit);
        out.warnings = std::move(e.warnings);
        native_cnf = false;
        break;
      }
      default: {  // SN
        auto e = encode_sn(tweaks.stutter ? stutter_closure(g) : g, depth);
        circuit = std::move(e.circuit);
        out.warnings = std::move(e.warnings);
        native_cnf = false;
        break;
      }
    }
  };
  const auto needs_graph = [](EncName e) {
    return e == EncName::EN || e == EncName::ET || e == EncName::LN || e == EncName::SN;
  };
  const auto needs_game = [](EncName e) {
    return e == EncName::EA || e == EncName::LA || e == EncName::SA;
  };

  if (const auto* board = std::get_if<HexBoard>(&inst.value)) {
    if (enc == EncName::HTTT_SN)
      throw GameError("httt-sn needs an httt:<shape>:<size> instance, not a board");
    if (needs_game(enc)) {
      BoardReduction red = reduce_board(*board, Side::Black, depth);
      if (red.already_won)
        cnf = trivial_true_cnf();
      else if (red.game.win_sets.empty())  // nothing reachable within the budget
        cnf = trivial_false_cnf();
      else
        from_game(red.game);
    } else if (enc == EncName::ET) {
      if (is_claim_free(*board)) {
        from_graph(board_to_ghex(*board, Side::White).graph);
      } else {
        TransversalInstance t = transversal_of_board(*board, Side::Black, depth);
        if (t.mover_hopeless)
          cnf = trivial_false_cnf();
        else
          from_graph(t.instance);
      }
    } else {  // EN / LN / SN
      if (is_claim_free(*board)) {
        from_graph(board_to_ghex(*board, Side::Black).graph);
      } else {
        BoardReduction red = reduce_board(*board, Side::Black, depth);
        if (red.already_won)
          cnf = trivial_true_cnf();
        else if (red.instance.num_nodes == 0)  // nothing reachable within the budget
          cnf = trivial_false_cnf();
        else
          from_graph(red.instance);
      }
    }
  } else if (const auto* graph = std::get_if<GeneralizedHexInstance>(&inst.value)) {
    if (needs_game(enc))
      from_game(game_from_ghex(*graph, (depth + 1) / 2));
    else if (needs_graph(enc))
      from_graph(*graph);
    else
      throw GameError("httt-sn needs an httt:<shape>:<size> instance, not a graph");
  } else {
    const auto& h = std::get<HtttSpec>(inst.value);
    if (enc == EncName::HTTT_SN) {
      circuit = encode_httt_sn(h.shape, h.board_size, depth, tweaks.symmetry_reduce);
      native_cnf = false;
    } else if (needs_game(enc)) {
      from_game(httt_game(h));
    } else {
      throw GameError("encoding " + to_string(enc) + " needs a board or graph instance");
    }
  }

  if (native_cnf) {
    if (format == FormulaFormat::Qcir)
      out.circuit = circuit_from_cnf(cnf);
    else
      out.cnf = std::move(cnf);
  } else {
    if (format == FormulaFormat::Qdimacs)
      out.cnf = tseitin(circuit);
    else
      out.circuit = std::move(circuit);
  }
  return out;
}

bool oracle_verdict(const InstanceSpec& inst, EncName enc, int depth) {
  if (const auto* board = std::get_if<HexBoard>(&inst.value)) {
    SideView v = board_to_ghex(*board, Side::Black);
    return solve_ghex(v.graph, v.short_claimed, v.cut_claimed, depth).black_wins;
  }
  if (const auto* graph = std::get_if<GeneralizedHexInstance>(&inst.value)) {
    if (enc == EncName::ET) return solve_ghex_transversal(*graph, {}, {}, depth).black_wins;
    return solve_ghex(*graph, {}, {}, depth).black_wins;
  }
  return solve_game(httt_game(std::get<HtttSpec>(inst.value)), depth).black_wins;
}

RunRecord run_solver(const std::string& formula_path, const std::string& solver_cmd,
                     const RunLimits& limits) {
  RunRecord rec;
  char capture_name[] = "/tmp/posqbf-capture-XXXXXX";
  const int out_fd = mkstemp(capture_name);
  if (out_fd < 0) {
    rec.note = "cannot create capture file";
    return rec;
  }
  unlink(capture_name);

  std::string quoted = "'";
  for (char c : formula_path) quoted += c == '\'' ? std::string("'\\''") : std::string(1, c);
  quoted += "'";
  const std::string command = solver_cmd + " " + quoted;

  const auto start = std::chrono::steady_clock::now();
  const pid_t pid = fork();
  if (pid == 0) {
    setpgid(0, 0);
    dup2(out_fd, 1);
    dup2(out_fd, 2);
    if (limits.memlimit_mb > 0) {
      rlimit rl{static_cast<rlim_t>(limits.memlimit_mb) << 20,
                static_cast<rlim_t>(limits.memlimit_mb) << 20};
      setrlimit(RLIMIT_AS, &rl);
    }
    execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  if (pid < 0) {
    close(out_fd);
    rec.note = "fork failed";
    return rec;
  }
  setpgid(pid, pid);  // best effort; the child does the same before exec

  bool timed_out = false;
  int status = 0;
  rusage usage{};
  for (;;) {
    const pid_t reaped = wait4(pid, &status, WNOHANG, &usage);
    if (reaped == pid) break;
    if (reaped < 0) break;
    if (!timed_out && limits.timeout_s > 0 && elapsed_s(start) >= limits.timeout_s) {
      kill(-pid, SIGKILL);
      kill(pid, SIGKILL);
      timed_out = true;
    }
    usleep(2000);
  }
  rec.time_s = elapsed_s(start);
  rec.mem_mb = static_cast<double>(usage.ru_maxrss) / 1024.0;  // ru_maxrss is in KB

  std::string output;
  if (lseek(out_fd, 0, SEEK_SET) == 0) {
    char chunk[4096];
    ssize_t n;
    while ((n = read(out_fd, chunk, sizeof chunk)) > 0) output.append(chunk, static_cast<size_t>(n));
  }
  close(out_fd);

  if (timed_out) {
    rec.result = RunResult::TIMEOUT;
    return rec;
  }
  if (WIFEXITED(status)) {
    const int code = WEXITSTATUS(status);
    if (code == 10) {
      rec.result = RunResult::SAT;
      return rec;
    }
    if (code == 20) {
      rec.result = RunResult::UNSAT;
      return rec;
    }
  }
  try {
    const std::regex sat_re(limits.sat_pattern), unsat_re(limits.unsat_pattern);
    std::istringstream lines(output);
    std::string line;
    while (std::getline(lines, line)) {
      if (std::regex_search(line, unsat_re)) {
        rec.result = RunResult::UNSAT;
        return rec;
      }
      if (std::regex_search(line, sat_re)) {
        rec.result = RunResult::SAT;
        return rec;
      }
    }
  } catch (const std::regex_error& e) {
    rec.note = std::string("bad answer pattern: ") + e.what();
    return rec;
  }
  if (limits.memlimit_mb > 0 && rec.mem_mb >= 0.8 * static_cast<double>(limits.memlimit_mb)) {
    rec.result = RunResult::MEMOUT;
    return rec;
  }
  rec.note = output.size() > 4000 ? output.substr(0, 4000) + "..." : output;
  return rec;
}

RunRecord run_internal(const std::string& formula_path, int var_limit) {
  RunRecord rec;
  const auto start = std::chrono::steady_clock::now();
  try {
    std::ifstream in(formula_path);
    if (!in) throw IoError("cannot open '" + formula_path + "'");
    std::string first;
    std::getline(in, first);
    in.clear();
    in.seekg(0);
    bool verdict;
    const EvalOptions opts{.var_limit = var_limit};
    if (first.rfind("#QCIR", 0) == 0)
      verdict = evaluate(tseitin(read_qcir(in)), opts);
    else
      verdict = evaluate(read_qdimacs(in), opts);
    rec.result = verdict ? RunResult::SAT : RunResult::UNSAT;
  } catch (const std::exception& e) {
    rec.result = RunResult::ERROR;
    rec.note = e.what();
  }
  rec.time_s = elapsed_s(start);
  return rec;
}

std::vector<BenchEntry> read_manifest(std::istream& in) {
  std::vector<BenchEntry> entries;
  std::string line;
  int line_no = 0;
  bool saw_header = false;
  bool has_format = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string trimmed = line;
    trimmed.erase(0, trimmed.find_first_not_of(" \t"));
    if (trimmed.empty() || trimmed.front() == '#') continue;

    std::vector<std::string> fields;
    std::istringstream ls(line);
    std::string field;
    while (std::getline(ls, field, ',')) {
      field.erase(0, field.find_first_not_of(" \t"));
      field.erase(field.find_last_not_of(" \t") + 1);
      fields.push_back(field);
    }

    if (!saw_header) {
      if (fields.size() == 5 && fields[4] == "format")
        has_format = true;
      else if (fields.size() != 4 || fields[0] != "instance" || fields[1] != "encoding" ||
               fields[2] != "depth" || fields[3] != "solver")
        throw ParseError("manifest header must be instance,encoding,depth,solver[,format]",
                         line_no);
      saw_header = true;
      continue;
    }
    const size_t want = has_format ? 5 : 4;
    if (fields.size() != want && !(has_format && fields.size() == 4))
      throw ParseError("expected " + std::to_string(want) + " fields", line_no);
    BenchEntry e;
    e.instance = fields[0];
    try {
      e.enc = parse_enc_name(fields[1]);
      e.depth = std::stoi(fields[2]);
    } catch (const std::exception& ex) {
      throw ParseError(ex.what(), line_no);
    }
    e.solver = fields[3];
    if (has_format && fields.size() == 5 && !fields[4].empty()) {
      try {
        e.format = parse_format(fields[4]);
      } catch (const std::exception& ex) {
        throw ParseError(ex.what(), line_no);
      }
    }
    entries.push_back(std::move(e));
  }
  if (!saw_header) throw ParseError("empty manifest", line_no);
  return entries;
}

std::vector<BenchEntry> read_manifest_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return read_manifest(in);
}

namespace {

RunRecord bench_one(const BenchEntry& entry, const BenchOptions& opts,
                    const std::vector<Polyomino>& shapes) {
  RunRecord rec;
  rec.instance = entry.instance;
  rec.encoding = to_string(entry.enc);
  rec.depth = entry.depth;
  const FormulaFormat fmt = entry.format.value_or(default_format(entry.enc));
  rec.format = to_string(fmt);
  std::string solver = entry.solver.empty() ? opts.default_solver : entry.solver;
  if (solver == "internal" || opts.force_internal) solver.clear();

  try {
    const InstanceSpec inst = load_instance(entry.instance, opts.base_dir, shapes);
    const Encoded enc = encode_instance(inst, entry.enc, entry.depth, fmt, opts.tweaks);
    if (solver.empty()) {
      const auto start = std::chrono::steady_clock::now();
      const EvalOptions eval{.var_limit = opts.var_limit};
      const bool verdict = fmt == FormulaFormat::Qdimacs ? evaluate(enc.cnf, eval)
                                                         : evaluate(tseitin(enc.circuit), eval);
      rec.result = verdict ? RunResult::SAT : RunResult::UNSAT;
      rec.time_s = elapsed_s(start);
    } else {
      char dir_name[] = "/tmp/posqbf-bench-XXXXXX";
      if (!mkdtemp(dir_name)) throw IoError("cannot create scratch directory");
      const std::string file =
          std::string(dir_name) + "/formula." + to_string(fmt);
      if (fmt == FormulaFormat::Qdimacs)
        write_qdimacs_file(file, enc.cnf);
      else
        write_qcir_file(file, enc.circuit);
      RunRecord r = run_solver(file, solver, opts.limits);
      rec.result = r.result;
      rec.time_s = r.time_s;
      rec.mem_mb = r.mem_mb;
      rec.note = std::move(r.note);
      std::remove(file.c_str());
      rmdir(dir_name);
    }
  } catch (const std::exception& e) {
    rec.result = RunResult::ERROR;
    rec.note = e.what();
  }
  return rec;
}

}  // namespace

std::vector<RunRecord> bench(const std::vector<BenchEntry>& entries, const BenchOptions& opts) {
  std::vector<RunRecord> records(entries.size());
  const std::vector<Polyomino> shapes =
      opts.shapes_path.empty() ? builtin_shapes() : merged_shape_catalog(opts.shapes_path);
  std::atomic<size_t> next{0};
  const auto worker = [&] {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= entries.size()) return;
      records[i] = bench_one(entries[i], opts, shapes);
    }
  };
  const int jobs = std::clamp(opts.jobs, 1, 64);
  if (jobs == 1 || entries.size() <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return records;
}

void write_csv(std::ostream& out, const std::vector<RunRecord>& records) {
  out << "instance,encoding,depth,format,result,time_s,mem_mb\n";
  char buf[64];
  for (const auto& r : records) {
    std::snprintf(buf, sizeof buf, "%.3f,%.1f", r.time_s, r.mem_mb);
    out << r.instance << ',' << r.encoding << ',' << r.depth << ',' << r.format << ','
        << to_string(r.result) << ',' << buf << '\n';
  }
}

std::string csv_to_string(const std::vector<RunRecord>& records) {
  std::ostringstream out;
  write_csv(out, records);
  return out.str();
}

namespace {

GeneralizedHexInstance make_graph(int n, std::vector<std::pair<int, int>> edges,
                                  std::vector<int> s, std::vector<int> e) {
  GeneralizedHexInstance g;
  g.num_nodes = n;
  g.edges = std::move(edges);
  g.border_s = std::move(s);
  g.border_e = std::move(e);
  g.canonicalize();
  return g;
}

const char* kHein9 =
    "size 4\n"
    "black b1 a3\n"
    "white c1 a4 d4\n";

}  // namespace

int selfcheck(std::ostream& log) {
  struct CaseSpec {
    std::string label;
    InstanceSpec inst;
    std::vector<int> depths;
    std::vector<EncName> encs;
  };
  const std::vector<EncName> all{EncName::EA, EncName::EN, EncName::ET, EncName::LA,
                                 EncName::LN, EncName::SA, EncName::SN};

  std::vector<CaseSpec> cases;
  cases.push_back({"two-route",
                   {"two-route", make_graph(5, {{0, 2}, {1, 2}}, {0, 1}, {2})},
                   {1, 3, 5},
                   all});
  cases.push_back({"diamond",
                   {"diamond", make_graph(6, {{0, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 5}}, {0, 1}, {4, 5})},
                   {1, 3, 5},
                   all});
  cases.push_back({"forked-path",
                   {"forked-path", make_graph(7, {{0, 2}, {1, 2}, {2, 3}, {3, 4}, {1, 3}}, {0, 1}, {4})},
                   {1, 3, 5},
                   all});
  {
    std::istringstream in(kHein9);
    cases.push_back({"hein9", {"hein9", read_hex_board(in)}, {3, 5}, all});
  }
  cases.push_back({"empty2", {"empty2", HexBoard(2)}, {1, 3}, all});
  cases.push_back({"empty3", {"empty3", HexBoard(3)}, {1, 3, 5}, all});
  cases.push_back({"httt-domino",
                   {"httt:domino:2", HtttSpec{shape_by_name("domino"), 2}},
                   {3},
                   {EncName::EA, EncName::HTTT_SN}});
  cases.push_back({"httt-tic",
                   {"httt:tic:3", HtttSpec{shape_by_name("tic"), 3}},
                   {5},
                   {EncName::EA, EncName::HTTT_SN}});

  int disagreements = 0;
  const EvalOptions eval{.var_limit = 100000};
  for (const auto& c : cases) {
    for (int d : c.depths) {
      log << c.label << " d=" << d << ":";
      for (EncName enc : c.encs) {
        const bool expect = oracle_verdict(c.inst, enc, d);
        const Encoded e = encode_instance(c.inst, enc, d, default_format(enc));
        const bool got = e.format == FormulaFormat::Qdimacs ? evaluate(e.cnf, eval)
                                                            : evaluate(tseitin(e.circuit), eval);
        if (got == expect) {
          log << ' ' << to_string(enc) << "=ok";
        } else {
          log << ' ' << to_string(enc) << "=MISMATCH(oracle=" << (expect ? "win" : "loss") << ")";
          ++disagreements;
        }
      }
      log << '\n';
    }
  }
  if (disagreements == 0)
    log << "all encodings agree with oracle\n";
  else
    log << disagreements << " disagreement(s)\n";
  return disagreements;
}

}  // namespace posqbf
