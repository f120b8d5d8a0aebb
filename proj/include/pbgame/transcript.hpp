#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "pbgame/game.hpp"

namespace pbgame {

/// Header "format" value. Readers accept any 1.x and reject other majors.
inline constexpr std::string_view kTranscriptFormat = "pbgame-transcript/1.0";
inline constexpr int kTranscriptMajor = 1;

struct TranscriptHeader {
  GameConfig config;
  std::string painter;
  std::uint64_t painter_seed = 0;
  std::string builder;
  std::uint64_t builder_seed = 0;
  nlohmann::json constants = nlohmann::json::object();
  std::string rng;
  std::string format{kTranscriptFormat};
};

struct PaintRecord {
  int round = 0;
  Paint paint;
};

struct BuildRecord {
  int round = 0;
  std::vector<Edge> edges;
};

/// Builder annotation marking a phase boundary (waiting-room certified,
/// escalation level reached, clique phase complete, fallback taken).
struct NoteRecord {
  int round = 0;
  std::string kind;
  nlohmann::json data = nlohmann::json::object();
};

struct ForfeitRecord {
  int round = 0;
};

using Record = std::variant<PaintRecord, BuildRecord, NoteRecord, ForfeitRecord>;

struct TerminalRecord {
  Status status = Status::Ongoing;
  int rounds = 0;
  std::string digest;
};

struct Transcript {
  TranscriptHeader header;
  std::vector<Record> records;
  std::optional<TerminalRecord> terminal;
};

/// FNV-1a over the colouring and the sorted edge list, as 16 hex digits.
std::string state_digest(const GameState& state);

class MalformedRecord : public std::runtime_error {
 public:
  MalformedRecord(int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

class TranscriptIoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string header_line(const TranscriptHeader& header);
std::string record_line(const Record& record);
std::string terminal_line(const TerminalRecord& terminal);

/// One JSON object per line: header, records, then the terminal record.
std::string to_jsonl(const Transcript& transcript);
void write_transcript(const Transcript& transcript, const std::filesystem::path& path);

Transcript parse_transcript(std::istream& in);
Transcript read_transcript(const std::filesystem::path& path);

/// Moves only (notes and forfeits dropped), in order.
std::vector<Move> moves_of(const Transcript& transcript);

}  // namespace pbgame
