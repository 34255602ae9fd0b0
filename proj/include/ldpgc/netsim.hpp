#pragma once
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "ldpgc/oracle.hpp"  // MarkVector

namespace ldpgc {

inline constexpr int kCostPerScalar = 8;  // double precision payload
inline constexpr int kCostPerMark = 1;

struct CommLedger {
    std::uint64_t bytes_node_to_node = 0;
    std::uint64_t bytes_node_to_analyzer = 0;
    std::uint64_t bytes_analyzer_to_node = 0;
    std::uint64_t msgs_node_to_node = 0;
    std::uint64_t msgs_node_to_analyzer = 0;
    std::uint64_t msgs_analyzer_to_node = 0;

    std::uint64_t total_bytes() const {
        return bytes_node_to_node + bytes_node_to_analyzer + bytes_analyzer_to_node;
    }
    CommLedger& operator+=(const CommLedger& o);
};

// Maximum absolute value; empty input is 0 (the no-active-contributors case).
double round_max(std::span<const double> values);

struct RoundRecord {
    std::vector<std::pair<std::uint32_t, double>> published;  // node -> value
    double max_abs = 0;
};

struct Transcript {
    MarkVector marks;
    std::vector<RoundRecord> rounds;
    void dump(std::ostream& out) const;  // line-oriented "round node value"
    bool operator==(const Transcript& o) const;
};

// Round-synchronous message fabric for one trial. Sends made during round r
// become readable once the round advances; recipients drain their inbox.
// Parties are node indices, or kAnalyzer.
class NetSim {
public:
    static constexpr std::int64_t kAnalyzer = -1;

    explicit NetSim(std::size_t n_nodes, bool capture_transcript = false);

    // Single-scalar message; ledger charged kCostPerScalar on the channel.
    void send(std::int64_t from, std::int64_t to, double value);
    // Mark message; ledger charged kCostPerMark. Marks are read back through
    // the recorded mark vector rather than per-node inboxes.
    void send_mark(std::int64_t from, std::int64_t to, int mark);
    // Bulk accounting for a node broadcasting one scalar to all other nodes;
    // delivery happens through the published round vector, not per-node inboxes.
    void broadcast_to_all_nodes(std::int64_t from, double value);

    // Records a value as published by `node` this round (transcript + maxima).
    void publish(std::uint32_t node, double value);
    void record_marks(const MarkVector& marks);
    void end_round();

    // Drains messages delivered to `to` (sent in earlier rounds).
    std::vector<std::pair<std::int64_t, double>> take_inbox(std::int64_t to);

    int current_round() const { return round_; }
    const CommLedger& ledger() const { return ledger_; }
    const Transcript& transcript() const { return transcript_; }
    double published_max(int round) const { return transcript_.rounds.at(round).max_abs; }

private:
    std::vector<std::pair<std::int64_t, double>>& inbox_slot(std::int64_t to,
                                                             bool pending);
    void charge(std::int64_t from, std::int64_t to, int bytes);

    std::size_t n_;
    bool capture_;
    int round_ = 0;
    CommLedger ledger_;
    Transcript transcript_;
    RoundRecord current_;
    std::vector<std::vector<std::pair<std::int64_t, double>>> pending_, deliverable_;
    std::vector<std::pair<std::int64_t, double>> analyzer_pending_, analyzer_deliverable_;
};

}  // namespace ldpgc
