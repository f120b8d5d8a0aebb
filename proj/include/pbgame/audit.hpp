#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pbgame/transcript.hpp"

namespace pbgame {

/// Predicates the auditor can evaluate while replaying a transcript.
enum class Check {
  Proper,       ///< no monochromatic edge, after every move
  Bipartite,    ///< game graph 2-colourable, after every Build
  WaitingRoom,  ///< at each "waiting_room" note
  Escalation,   ///< at each "escalation" note
  Clique,       ///< at each "clique_phase" and "clique" note
  Digest,       ///< terminal record matches the replayed position
};

std::string to_string(Check check);
using CheckSet = std::set<Check>;
CheckSet all_checks();
/// Comma-separated names ("proper,bipartite") or "all".
CheckSet parse_checks(const std::string& text);
/// The checks a Builder's transcripts must satisfy: everything, except that
/// only the logarithmic Builder promises a bipartite graph.
CheckSet promised_checks(const std::string& builder);
/// "auto" resolves through promised_checks, anything else through parse_checks.
CheckSet resolve_checks(const std::string& text, const std::string& builder);

struct CheckOutcome {
  Check check = Check::Proper;
  int evaluations = 0;
  std::optional<int> first_failure_line;  ///< 1-based line in the transcript file
  std::string message;

  bool passed() const { return !first_failure_line; }
};

struct AuditReport {
  std::string source;
  std::vector<CheckOutcome> checks;
  /// Replay stopped here: malformed record or illegal move.
  std::optional<int> error_line;
  std::string error;
  Status replayed_status = Status::Ongoing;

  bool passed() const;
  const CheckOutcome* find(Check check) const;
  std::string summary() const;
};

/// Line of records[i] in the file layout (header on line 1).
inline int record_line_number(std::size_t index) { return static_cast<int>(index) + 2; }

AuditReport audit_transcript(const Transcript& transcript, const CheckSet& checks);
AuditReport audit_stream(std::istream& in, const CheckSet& checks, std::string source = "<stream>");
AuditReport audit_file(const std::filesystem::path& path, const CheckSet& checks);
/// As above with the check set resolved against the transcript's Builder.
AuditReport audit_transcript(const Transcript& transcript, const std::string& checks);
AuditReport audit_file(const std::filesystem::path& path, const std::string& checks);

}  // namespace pbgame
