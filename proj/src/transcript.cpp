#include "pbgame/transcript.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace pbgame {

using ordered_json = nlohmann::ordered_json;

std::string state_digest(const GameState& state) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t value) {
    for (int i = 0; i < 8; ++i) {
      h ^= (value >> (8 * i)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  };
  mix(static_cast<std::uint64_t>(state.n()));
  for (Vertex v = 1; v <= state.n(); ++v) mix(static_cast<std::uint64_t>(state.colour(v)));
  std::vector<Edge> edges(state.edges().begin(), state.edges().end());
  std::sort(edges.begin(), edges.end());
  mix(edges.size());
  for (const Edge& e : edges) mix(e.key());
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

MalformedRecord::MalformedRecord(int line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

std::string header_line(const TranscriptHeader& header) {
  ordered_json j;
  j["type"] = "header";
  j["format"] = header.format;
  j["n"] = header.config.n;
  j["k"] = header.config.k;
  j["p"] = header.config.p;
  j["b"] = header.config.b;
  j["painter"] = header.painter;
  j["painter_seed"] = header.painter_seed;
  j["builder"] = header.builder;
  j["builder_seed"] = header.builder_seed;
  j["rng"] = header.rng;
  j["constants"] = header.constants;
  return j.dump();
}

std::string record_line(const Record& record) {
  ordered_json j;
  std::visit(
      [&j](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, PaintRecord>) {
          j["type"] = "paint";
          j["round"] = r.round;
          j["v"] = r.paint.vertex;
          j["c"] = r.paint.colour;
        } else if constexpr (std::is_same_v<T, BuildRecord>) {
          j["type"] = "build";
          j["round"] = r.round;
          auto edges = ordered_json::array();
          for (const Edge& e : r.edges) edges.push_back({e.u, e.v});
          j["edges"] = std::move(edges);
        } else if constexpr (std::is_same_v<T, NoteRecord>) {
          j["type"] = "note";
          j["round"] = r.round;
          j["kind"] = r.kind;
          j["data"] = r.data;
        } else {
          j["type"] = "forfeit";
          j["round"] = r.round;
        }
      },
      record);
  return j.dump();
}

std::string terminal_line(const TerminalRecord& terminal) {
  ordered_json j;
  j["type"] = "end";
  j["status"] = to_string(terminal.status);
  j["rounds"] = terminal.rounds;
  j["digest"] = terminal.digest;
  return j.dump();
}

std::string to_jsonl(const Transcript& transcript) {
  std::string out = header_line(transcript.header);
  out += '\n';
  for (const Record& r : transcript.records) {
    out += record_line(r);
    out += '\n';
  }
  if (transcript.terminal) {
    out += terminal_line(*transcript.terminal);
    out += '\n';
  }
  return out;
}

void write_transcript(const Transcript& transcript, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw TranscriptIoError("cannot open '" + path.string() + "' for writing");
  out << to_jsonl(transcript);
  out.flush();
  if (!out) throw TranscriptIoError("write to '" + path.string() + "' failed");
}

namespace {

template <typename T>
T field(const nlohmann::json& j, const char* name, int line) {
  auto it = j.find(name);
  if (it == j.end()) throw MalformedRecord(line, std::string("missing field '") + name + "'");
  try {
    return it->get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw MalformedRecord(line, std::string("bad field '") + name + "': " + e.what());
  }
}

int format_major(const std::string& format, int line) {
  const std::string prefix = "pbgame-transcript/";
  if (format.rfind(prefix, 0) != 0) throw MalformedRecord(line, "unknown format '" + format + "'");
  try {
    return std::stoi(format.substr(prefix.size()));
  } catch (const std::exception&) {
    throw MalformedRecord(line, "unparseable format version '" + format + "'");
  }
}

}  // namespace

Transcript parse_transcript(std::istream& in) {
  Transcript t;
  std::string text;
  int line = 0;
  bool have_header = false;
  while (std::getline(in, text)) {
    ++line;
    if (text.empty()) throw MalformedRecord(line, "empty line");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw MalformedRecord(line, std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw MalformedRecord(line, "record is not an object");
    const auto type = field<std::string>(j, "type", line);
    if (!have_header) {
      if (type != "header") throw MalformedRecord(line, "first record must be the header");
      auto& h = t.header;
      h.format = field<std::string>(j, "format", line);
      if (format_major(h.format, line) != kTranscriptMajor) {
        throw MalformedRecord(line, "unsupported format major version in '" + h.format + "'");
      }
      h.config.n = field<int>(j, "n", line);
      h.config.k = field<int>(j, "k", line);
      h.config.p = field<int>(j, "p", line);
      h.config.b = field<int>(j, "b", line);
      h.painter = field<std::string>(j, "painter", line);
      h.painter_seed = field<std::uint64_t>(j, "painter_seed", line);
      h.builder = field<std::string>(j, "builder", line);
      h.builder_seed = field<std::uint64_t>(j, "builder_seed", line);
      h.rng = field<std::string>(j, "rng", line);
      if (j.contains("constants")) h.constants = j["constants"];
      have_header = true;
      continue;
    }
    if (t.terminal) throw MalformedRecord(line, "record after terminal record");
    if (type == "paint") {
      t.records.emplace_back(PaintRecord{field<int>(j, "round", line),
                                         Paint{field<int>(j, "v", line), field<int>(j, "c", line)}});
    } else if (type == "build") {
      BuildRecord r{field<int>(j, "round", line), {}};
      const auto edges = field<nlohmann::json>(j, "edges", line);
      if (!edges.is_array()) throw MalformedRecord(line, "edges must be an array");
      for (const auto& e : edges) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
          throw MalformedRecord(line, "edge must be a pair of integers");
        }
        r.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
      }
      t.records.emplace_back(std::move(r));
    } else if (type == "note") {
      t.records.emplace_back(NoteRecord{field<int>(j, "round", line),
                                        field<std::string>(j, "kind", line),
                                        j.value("data", nlohmann::json::object())});
    } else if (type == "forfeit") {
      t.records.emplace_back(ForfeitRecord{field<int>(j, "round", line)});
    } else if (type == "end") {
      try {
        t.terminal = TerminalRecord{status_from_string(field<std::string>(j, "status", line)),
                                    field<int>(j, "rounds", line),
                                    field<std::string>(j, "digest", line)};
      } catch (const std::invalid_argument& e) {
        throw MalformedRecord(line, e.what());
      }
    } else {
      throw MalformedRecord(line, "unknown record type '" + type + "'");
    }
  }
  if (!have_header) throw MalformedRecord(1, "empty transcript");
  return t;
}

Transcript read_transcript(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TranscriptIoError("cannot open '" + path.string() + "'");
  return parse_transcript(in);
}

std::vector<Move> moves_of(const Transcript& transcript) {
  std::vector<Move> moves;
  for (const Record& r : transcript.records) {
    if (const auto* p = std::get_if<PaintRecord>(&r)) {
      moves.emplace_back(p->paint);
    } else if (const auto* b = std::get_if<BuildRecord>(&r)) {
      moves.emplace_back(Build{b->edges});
    }
  }
  return moves;
}

}  // namespace pbgame
