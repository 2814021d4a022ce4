#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace duet::wire {

inline constexpr std::array<std::uint8_t, 4> kMagic{'D', 'U', 'E', 'T'};
inline constexpr std::uint8_t kVersion = 1;

// Declared payload lengths are capped so malformed input cannot trigger
// unbounded allocation.
inline constexpr std::uint64_t kMaxPayloadBytes = 1ull << 30;
inline constexpr std::uint64_t kMaxElements = kMaxPayloadBytes / 4;
inline constexpr int kMaxRank = 8;

enum class Mode : std::uint8_t { full = 0, compact = 1 };

// The mode byte carries reserved flag bits above the mode value;
// bit 7 marks masks the client could not ROI-refine.
inline constexpr std::uint8_t kFlagUnrefinedMasks = 0x80;

// rank (u8), dims (u32 LE each), payload (f32 LE, row-major).
struct TensorRecord {
    std::vector<std::uint32_t> dims;
    std::vector<float> payload;

    std::uint64_t element_count() const {
        std::uint64_t n = 1;
        for (auto d : dims) n *= d;
        return dims.empty() ? 0 : n;
    }
};

// Complete client->server payload. The transmitted tensor holds only
// non-crucial channels; the crucial list identifies what was withheld.
struct QueryMessage {
    Mode mode = Mode::compact;
    bool masks_unrefined = false;
    std::uint8_t k = 0;
    std::uint64_t query_id = 0;
    std::vector<std::uint8_t> crucial; // 3K channel ids, strictly ascending
    TensorRecord x_s;                  // dims [channels, h, w]
    std::vector<TensorRecord> masks;   // dims [h, w], sizes strictly decreasing
};

struct ResponseMessage {
    std::uint64_t query_id = 0;
    TensorRecord embedding; // dims [n]
    std::uint64_t xs_elements = 0;
    std::uint64_t mask_elements = 0;
    std::uint64_t total_elements = 0;
};

std::vector<std::uint8_t> encode(const QueryMessage& msg);
QueryMessage decode(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> encode_response(const ResponseMessage& msg);
ResponseMessage decode_response(std::span<const std::uint8_t> bytes);

// Standalone tensor-record serialization, shared by the weight-file format.
std::vector<std::uint8_t> encode_record_bytes(const TensorRecord& rec);
TensorRecord decode_record_bytes(std::span<const std::uint8_t> bytes);

// Element counts exclude headers and the spec record. Paper accounting
// substitutes the reported 160-channel figure for the compact K=10 payload.
enum class Accounting { actual, paper };

struct CommCost {
    std::uint64_t xs_elements = 0;
    std::uint64_t mask_elements = 0;
    std::uint64_t total = 0;
};

CommCost comm_cost(const QueryMessage& msg, Accounting accounting = Accounting::actual);

} // namespace duet::wire
