// posqbf: encode bounded-depth maker-breaker games as QBF, preprocess game
// instances, run oracles and solvers, and drive benchmark batches.
//
// Exit codes: 0 success, 1 usage / bad arguments, 2 I/O or parse trouble,
// 3 solver failure or a failed check. `solve --solver-exit` switches to the
// solver convention instead: 10 = SAT, 20 = UNSAT.
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "posqbf/encode_explicit.hpp"
#include "posqbf/evaluate.hpp"
#include "posqbf/hex.hpp"
#include "posqbf/httt.hpp"
#include "posqbf/oracle.hpp"
#include "posqbf/preprocess.hpp"
#include "posqbf/qbf_io.hpp"
#include "posqbf/runner.hpp"

using namespace posqbf;

namespace {

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

FormulaStats formula_stats(const Encoded& e) {
  return e.format == FormulaFormat::Qdimacs ? stats(e.cnf) : stats(e.circuit);
}

void print_stats_line(std::ostream& out, const std::string& instance, EncName enc, int depth,
                      const Encoded& e) {
  const FormulaStats s = formula_stats(e);
  out << "instance=" << instance << " enc=" << to_string(enc) << " depth=" << depth
      << " format=" << to_string(e.format) << " vars=" << s.num_vars;
  if (e.format == FormulaFormat::Qdimacs)
    out << " clauses=" << s.num_clauses;
  else
    out << " gates=" << s.num_gates << " and=" << s.num_and << " or=" << s.num_or;
  out << " blocks=" << s.alternation_depth << '\n';
}

bool file_is_formula(const std::string& path) {
  std::ifstream in(path);
  if (!in) return false;
  std::string line, token;
  while (std::getline(in, line)) {
    if (line.rfind("#QCIR", 0) == 0) return true;
    std::istringstream ls(line);
    if (!(ls >> token) || token == "c") continue;
    return token == "p" && (ls >> token) && token == "cnf";
  }
  return false;
}

int run(int argc, char** argv) {
  CLI::App app{"bounded-depth QBF toolchain for maker-breaker positional games"};
  app.require_subcommand(1);

  std::string enc_s, format_s, in_path, out_path, board_s, shape_s, shapes_path;
  std::string solver_cmd, sat_pattern, unsat_pattern, first_cell, side_s = "black";
  int depth = 0, jobs = 1, var_limit = 100000, open_limit = 20;
  double timeout_s = 0;
  long memlimit_mb = 0;
  bool no_stutter = false, symmetry = false, solver_exit = false, transversal = false;

  const auto add_instance_opts = [&](CLI::App* cmd, bool need_enc) {
    cmd->add_option("--enc", enc_s, "encoding: ea|en|et|la|ln|sa|sn|httt-sn")
        ->required(need_enc);
    // solve on a plain formula file needs no depth; instance paths check at run time
    cmd->add_option("--depth", depth, "odd play depth")->required(need_enc);
    cmd->add_option("--in", in_path, "instance file (board or connection graph)");
    cmd->add_option("--board", board_s,
                    "synthetic instance: emptyN = empty hex board, N = square board for --shape");
    cmd->add_option("--shape", shape_s, "achievement-game shape name");
    cmd->add_option("--shapes-file", shapes_path, "extra shape catalog (overrides built-ins)");
    cmd->add_flag("--no-stutter", no_stutter, "skip target self-loops for ln/sn");
    cmd->add_flag("--symmetry", symmetry, "httt-sn first-move symmetry reduction");
    cmd->add_option("--format", format_s, "qdimacs|qcir (default per encoding)");
  };

  CLI::App* c_encode = app.add_subcommand("encode", "write one encoding to a formula file");
  add_instance_opts(c_encode, true);
  c_encode->add_option("--out", out_path, "output path")->required();

  CLI::App* c_stats = app.add_subcommand("stats", "print encoding size counts");
  add_instance_opts(c_stats, true);

  CLI::App* c_pre = app.add_subcommand("preprocess", "reduce a board, write the instance");
  c_pre->add_option("--in", in_path, "board file")->required();
  c_pre->add_option("--depth", depth, "odd play depth")->required();
  c_pre->add_option("--out", out_path, "output connection-graph path")->required();
  c_pre->add_option("--side", side_s, "maker side: black|white (default black)");
  c_pre->add_flag("--transversal", transversal, "emit the breaker-view companion instead");

  CLI::App* c_oracle = app.add_subcommand("oracle", "exhaustive game search verdict");
  c_oracle->add_option("--in", in_path, "instance file")->required();
  c_oracle->add_option("--depth", depth, "odd play depth")->required();
  c_oracle->add_option("--first", first_cell, "force the maker's first move (cell or node id)");
  c_oracle->add_option("--open-limit", open_limit, "refuse more open positions than this");

  CLI::App* c_solve = app.add_subcommand("solve", "decide an instance or a formula file");
  add_instance_opts(c_solve, false);
  c_solve->add_option("--solver-cmd", solver_cmd, "external solver command (else evaluate in-process)")
      ->envname("POSQBF_SOLVER");
  c_solve->add_option("--timeout", timeout_s, "wall-clock limit, seconds");
  c_solve->add_option("--memlimit", memlimit_mb, "address-space limit, MB");
  c_solve->add_option("--var-limit", var_limit, "in-process evaluation size bound");
  c_solve->add_option("--sat-pattern", sat_pattern, "per-line SAT answer regex");
  c_solve->add_option("--unsat-pattern", unsat_pattern, "per-line UNSAT answer regex");
  c_solve->add_flag("--solver-exit", solver_exit, "exit 10 on SAT / 20 on UNSAT");

  CLI::App* c_bench = app.add_subcommand("bench", "run a manifest of encode+solve jobs");
  c_bench->add_option("--manifest", in_path, "CSV: instance,encoding,depth,solver[,format]")
      ->required();
  c_bench->add_option("--out", out_path, "result CSV path (default stdout)");
  c_bench->add_option("--solver-cmd", solver_cmd, "solver for entries without one")
      ->envname("POSQBF_SOLVER");
  c_bench->add_option("--timeout", timeout_s, "per-run wall-clock limit, seconds");
  c_bench->add_option("--memlimit", memlimit_mb, "per-run address-space limit, MB");
  c_bench->add_option("--jobs", jobs, "parallel runs");
  c_bench->add_option("--var-limit", var_limit, "in-process evaluation size bound");
  c_bench->add_option("--shapes-file", shapes_path, "extra shape catalog");
  c_bench->add_flag("--no-stutter", no_stutter, "skip target self-loops for ln/sn");
  c_bench->add_flag("--symmetry", symmetry, "httt-sn first-move symmetry reduction");

  app.add_subcommand("selfcheck", "cross-check every encoding against the oracle");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;  // 0 covers --help / --version
  }

  const auto shapes = [&]() {
    return shapes_path.empty() ? builtin_shapes() : merged_shape_catalog(shapes_path);
  };
  const auto instance_arg = [&]() -> std::string {
    const bool board_is_size =
        !board_s.empty() && board_s.find_first_not_of("0123456789") == std::string::npos;
    if (!shape_s.empty() || board_is_size) {
      if (shape_s.empty() || !board_is_size)
        throw Usage("an achievement game needs both --shape NAME and --board N");
      return "httt:" + shape_s + ":" + board_s;
    }
    if (!board_s.empty()) return board_s;  // emptyN
    if (!in_path.empty()) return in_path;
    throw Usage("give an instance via --in, --board emptyN, or --shape NAME --board N");
  };
  const auto tweaks = [&]() { return EncodeTweaks{!no_stutter, symmetry}; };
  const auto make_encoding = [&]() {
    if (depth <= 0) throw Usage("--depth is required when encoding an instance");
    const EncName enc = parse_enc_name(enc_s);
    const InstanceSpec inst = load_instance(instance_arg(), "", shapes());
    const FormulaFormat fmt =
        format_s.empty() ? default_format(enc) : parse_format(format_s);
    Encoded e = encode_instance(inst, enc, depth, fmt, tweaks());
    for (const auto& w : e.warnings) std::cerr << "warning: " << w << '\n';
    return std::pair{inst, std::move(e)};
  };

  if (*c_encode) {
    auto [inst, e] = make_encoding();
    if (e.format == FormulaFormat::Qdimacs)
      write_qdimacs_file(out_path, e.cnf);
    else
      write_qcir_file(out_path, e.circuit);
    std::cout << "wrote " << out_path << '\n';
    print_stats_line(std::cout, inst.name, parse_enc_name(enc_s), depth, e);
    return 0;
  }

  if (*c_stats) {
    auto [inst, e] = make_encoding();
    print_stats_line(std::cout, inst.name, parse_enc_name(enc_s), depth, e);
    return 0;
  }

  if (*c_pre) {
    const HexBoard board = read_hex_board_file(in_path);
    const Side side = side_s == "white" ? Side::White
                      : side_s == "black"
                          ? Side::Black
                          : throw Usage("--side must be black or white");
    GeneralizedHexInstance out_inst;
    std::vector<int> node_to_cell;
    if (transversal) {
      TransversalInstance t = transversal_of_board(board, side, depth);
      if (t.mover_hopeless) std::cout << "note: the breaker side is already connected\n";
      out_inst = std::move(t.instance);
      node_to_cell = std::move(t.node_to_cell);
    } else {
      BoardReduction r = reduce_board(board, side, depth);
      if (r.already_won) std::cout << "note: the maker side is already connected\n";
      out_inst = std::move(r.instance);
      node_to_cell = std::move(r.node_to_cell);
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + out_path + "' for writing");
    write_ghex(out, out_inst);
    std::cout << "wrote " << out_path << ": nodes=" << out_inst.num_nodes
              << " edges=" << out_inst.edges.size() << '\n';
    if (!node_to_cell.empty()) {
      std::cout << "cells:";
      for (size_t i = 0; i < node_to_cell.size(); ++i)
        std::cout << ' ' << i << '=' << cell_name(board, node_to_cell[i]);
      std::cout << '\n';
    }
    return 0;
  }

  if (*c_oracle) {
    const InstanceSpec inst = load_instance(in_path, "", builtin_shapes());
    OracleOptions opts;
    opts.open_limit = open_limit;
    Verdict v;
    if (const auto* board = std::get_if<HexBoard>(&inst.value)) {
      if (!first_cell.empty()) opts.forced_first = parse_cell(*board, first_cell);
      const SideView view = board_to_ghex(*board, Side::Black);
      v = solve_ghex(view.graph, view.short_claimed, view.cut_claimed, depth, opts);
      std::cout << (v.black_wins ? "black wins" : "black does not win") << " within depth "
                << depth << '\n';
      if (!v.variation.empty()) {
        std::cout << "line:";
        for (int id : v.variation) std::cout << ' ' << cell_name(*board, id);
        std::cout << '\n';
      }
    } else if (const auto* graph = std::get_if<GeneralizedHexInstance>(&inst.value)) {
      if (!first_cell.empty()) {
        try {
          opts.forced_first = std::stoi(first_cell);
        } catch (const std::exception&) {
          throw Usage("--first must be a node id for graph instances");
        }
      }
      v = solve_ghex(*graph, {}, {}, depth, opts);
      std::cout << (v.black_wins ? "short wins" : "short does not win") << " within depth "
                << depth << '\n';
      if (!v.variation.empty()) {
        std::cout << "line:";
        for (int id : v.variation) std::cout << ' ' << id;
        std::cout << '\n';
      }
    } else {
      throw Usage("the oracle takes a board or connection-graph file");
    }
    return 0;
  }

  if (*c_solve) {
    RunLimits limits;
    limits.timeout_s = timeout_s;
    limits.memlimit_mb = memlimit_mb;
    if (!sat_pattern.empty()) limits.sat_pattern = sat_pattern;
    if (!unsat_pattern.empty()) limits.unsat_pattern = unsat_pattern;

    RunRecord rec;
    if (enc_s.empty()) {
      if (in_path.empty() || !file_is_formula(in_path))
        throw Usage("solve needs --enc plus an instance, or --in with a formula file");
      rec = solver_cmd.empty() ? run_internal(in_path, var_limit)
                               : run_solver(in_path, solver_cmd, limits);
    } else if (solver_cmd.empty()) {
      auto [inst, e] = make_encoding();
      (void)inst;
      const auto start = std::chrono::steady_clock::now();
      const bool verdict = e.format == FormulaFormat::Qdimacs
                               ? evaluate(e.cnf, {.var_limit = var_limit})
                               : evaluate(tseitin(e.circuit), {.var_limit = var_limit});
      rec.result = verdict ? RunResult::SAT : RunResult::UNSAT;
      rec.time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    } else {
      auto [inst, e] = make_encoding();
      (void)inst;
      char dir_name[] = "/tmp/posqbf-solve-XXXXXX";
      if (!mkdtemp(dir_name)) throw IoError("cannot create scratch directory");
      const std::string file = std::string(dir_name) + "/formula." + to_string(e.format);
      if (e.format == FormulaFormat::Qdimacs)
        write_qdimacs_file(file, e.cnf);
      else
        write_qcir_file(file, e.circuit);
      rec = run_solver(file, solver_cmd, limits);
      std::remove(file.c_str());
      rmdir(dir_name);
    }
    std::cout << "result: " << to_string(rec.result);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", rec.time_s);
    std::cout << " time_s=" << buf;
    if (rec.mem_mb > 0) {
      std::snprintf(buf, sizeof buf, "%.1f", rec.mem_mb);
      std::cout << " mem_mb=" << buf;
    }
    std::cout << '\n';
    if (rec.result == RunResult::ERROR && !rec.note.empty())
      std::cerr << "captured output:\n" << rec.note << '\n';
    if (solver_exit)
      return rec.result == RunResult::SAT ? 10 : rec.result == RunResult::UNSAT ? 20 : 3;
    return rec.result == RunResult::ERROR ? 3 : 0;
  }

  if (*c_bench) {
    BenchOptions opts;
    opts.limits.timeout_s = timeout_s;
    opts.limits.memlimit_mb = memlimit_mb;
    opts.tweaks = tweaks();
    opts.jobs = jobs;
    opts.var_limit = var_limit;
    opts.shapes_path = shapes_path;
    opts.default_solver = solver_cmd;
    const size_t slash = in_path.find_last_of('/');
    if (slash != std::string::npos) opts.base_dir = in_path.substr(0, slash);
    const std::vector<BenchEntry> entries = read_manifest_file(in_path);
    const std::vector<RunRecord> records = bench(entries, opts);
    if (out_path.empty()) {
      write_csv(std::cout, records);
    } else {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) throw IoError("cannot open '" + out_path + "' for writing");
      write_csv(out, records);
      std::cout << "wrote " << out_path << " (" << records.size() << " rows)\n";
    }
    for (const auto& r : records)
      if (r.result == RunResult::ERROR)
        std::cerr << "error: " << r.instance << " " << r.encoding << " d=" << r.depth << ": "
                  << r.note << '\n';
    return 0;
  }

  // selfcheck
  return posqbf::selfcheck(std::cout) == 0 ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Usage& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const GameError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const QbfError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
