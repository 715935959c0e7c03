// Batch plumbing around the encoders: named encodings, instance loading,
// external solver invocation with resource limits, and benchmark runs
// emitting CSV tables.
//
// An instance spec is either a file path (hex board or connection-graph
// format, sniffed by content), "empty<N>" for the empty N-by-N hex board, or
// "httt:<shape>:<N>" for a shape-achievement game on an N-by-N square board.
//
// Encoding dispatch (the maker is Black except where noted):
//   - boards with stones are reduced first: EA/LA/SA play on the reduced
//     win-set game, EN/LN/SN on the reduced connection graph, ET on the
//     breaker-view companion instance;
//   - claim-free boards feed the raw board graph to EN/LN/SN (Black view)
//     and ET (White view, mover = Black);
//   - connection-graph files must be claim-free: EA/LA/SA play on the
//     minimal-connecting-set game within the move budget, EN/LN/SN on the
//     graph itself, and ET asks whether the cut side moving first wins;
//   - LN/SN targets receive self-loops first (disable with stutter=false).
//
// QDIMACS output lowers circuit encodings through Tseitin; QCIR output lifts
// clause matrices through circuit_from_cnf. Either way the verdict is
// unchanged and the bytes are deterministic.
#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "posqbf/hex.hpp"
#include "posqbf/httt.hpp"
#include "posqbf/qbf.hpp"

namespace posqbf {

enum class EncName { EA, EN, ET, LA, LN, SA, SN, HTTT_SN };

// "ea".."sn", "httt-sn"; case-insensitive. Throws GameError on anything else.
EncName parse_enc_name(const std::string& s);
std::string to_string(EncName e);  // upper-case: EA .. HTTT-SN

enum class FormulaFormat { Qdimacs, Qcir };
FormulaFormat parse_format(const std::string& s);  // "qdimacs" | "qcir"
std::string to_string(FormulaFormat f);
// qdimacs for the clause encoders EA/EN/ET, qcir for the circuit encoders.
FormulaFormat default_format(EncName e);

struct HtttSpec {
  Polyomino shape;
  int board_size = 0;
};

struct InstanceSpec {
  std::string name;  // the spec string as given
  std::variant<HexBoard, GeneralizedHexInstance, HtttSpec> value;
};

// Resolves an instance spec string. Relative paths are resolved against
// base_dir when non-empty. Shape names are looked up in `shapes` (pass
// builtin_shapes() or a merged catalog). Throws ParseError / GameError on
// malformed specs, std::system_error-free: unreadable files raise IoError.
struct IoError : std::runtime_error {
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};
InstanceSpec load_instance(const std::string& spec, const std::string& base_dir,
                           const std::vector<Polyomino>& shapes);

// Shapes from `path` override same-named built-ins and extend the catalog.
std::vector<Polyomino> merged_shape_catalog(const std::string& path);

struct Encoded {
  FormulaFormat format = FormulaFormat::Qdimacs;
  QbfCnf cnf;          // filled when format == Qdimacs
  QbfCircuit circuit;  // filled when format == Qcir
  std::vector<std::string> warnings;
};

struct EncodeTweaks {
  bool stutter = true;          // self-loops on LN/SN targets
  bool symmetry_reduce = false; // HTTT first-move octant restriction
};

Encoded encode_instance(const InstanceSpec& inst, EncName enc, int depth, FormulaFormat format,
                        const EncodeTweaks& tweaks = {});

// The matching ground-truth verdict for encode_instance: the game oracle on
// the same reduced game (for ET, the transversal-game oracle). Exponential;
// desk scale only.
bool oracle_verdict(const InstanceSpec& inst, EncName enc, int depth);

enum class RunResult { SAT, UNSAT, TIMEOUT, MEMOUT, ERROR };
std::string to_string(RunResult r);

struct RunRecord {
  std::string instance;
  std::string encoding;
  int depth = 0;
  std::string format;
  RunResult result = RunResult::ERROR;
  double time_s = 0;
  double mem_mb = 0;    // child peak RSS; 0 for in-process evaluation
  std::string note;     // captured output on ERROR; not a CSV column
};

struct RunLimits {
  double timeout_s = 0;   // 0 = unlimited
  long memlimit_mb = 0;   // 0 = unlimited; enforced via the address-space rlimit
  // Per-line answer patterns (ECMAScript regexes) consulted when the exit
  // code is not the conventional 10 (SAT) / 20 (UNSAT). The UNSAT pattern is
  // tried first on each line.
  std::string sat_pattern = R"(^s cnf 1\b|^s SAT|\bSATISFIABLE\b|^r SAT|^1$)";
  std::string unsat_pattern = R"(^s cnf 0\b|^s UNSAT|\bUNSATISFIABLE\b|^r UNSAT|^0$)";
};

// Runs `solver_cmd <formula_path>` through /bin/sh in its own process group,
// killing the group when the wall-clock limit lapses. Fills result, time_s,
// and mem_mb (peak RSS of the child, MB); instance/encoding/depth/format are
// left for the caller. Exit 10/20 are SAT/UNSAT; otherwise the captured
// output is matched against the answer patterns; a child that died under a
// memory limit after reaching most of it counts as MEMOUT; anything else is
// ERROR with the output in note.
RunRecord run_solver(const std::string& formula_path, const std::string& solver_cmd,
                     const RunLimits& limits);

// Evaluates a formula file in-process with the ground-truth evaluator.
// result is SAT/UNSAT, or ERROR (note says why) when the file is malformed
// or over var_limit.
RunRecord run_internal(const std::string& formula_path, int var_limit);

struct BenchEntry {
  std::string instance;
  EncName enc = EncName::EA;
  int depth = 1;
  std::string solver;  // empty = in-process evaluation
  std::optional<FormulaFormat> format;
};

// Parses "instance,encoding,depth,solver[,format]" CSV with that exact
// header. Blank lines and lines starting with '#' are skipped.
std::vector<BenchEntry> read_manifest(std::istream& in);
std::vector<BenchEntry> read_manifest_file(const std::string& path);

struct BenchOptions {
  RunLimits limits;
  EncodeTweaks tweaks;
  int jobs = 1;
  int var_limit = 100000;        // in-process evaluation bound
  std::string base_dir;          // instance path resolution
  std::string shapes_path;       // optional extra shape catalog
  std::string default_solver;    // used when an entry's solver is empty…
  bool force_internal = false;   // …unless the entry says "internal"
};

// One record per entry, in manifest order. Encoding or I/O trouble on one
// entry yields an ERROR record and the run continues. Entries run on up to
// `jobs` threads; external solvers get isolated scratch directories.
std::vector<RunRecord> bench(const std::vector<BenchEntry>& entries, const BenchOptions& opts);

// header + one row per record: instance,encoding,depth,format,result,time_s,mem_mb
void write_csv(std::ostream& out, const std::vector<RunRecord>& records);
std::string csv_to_string(const std::vector<RunRecord>& records);

// Cross-checks every encoding against the game oracle on a fixed family of
// desk-scale instances, writing one line per (instance, depth) to `log`.
// Returns the number of disagreements (0 = all encodings agree).
int selfcheck(std::ostream& log);

}  // namespace posqbf
