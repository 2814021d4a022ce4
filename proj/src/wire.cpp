#include "duet/wire.hpp"

#include <cstring>

#include "duet/channel_split.hpp"
#include "duet/errors.hpp"

namespace duet::wire {

namespace {

void put_u8(std::vector<std::uint8_t>& out, std::uint8_t v) { out.push_back(v); }

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 24));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_f32(std::vector<std::uint8_t>& out, float v) {
    std::uint32_t bits;
    std::memcpy(&bits, &v, 4);
    put_u32(out, bits);
}

// Bounds-checked cursor; every read is validated against the remaining
// length before any allocation happens.
class Reader {
public:
    explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    std::uint8_t u8() {
        need(1);
        return bytes_[pos_++];
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes_[pos_++]) << (8 * i);
        return v;
    }
    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(bytes_[pos_++]) << (8 * i);
        return v;
    }
    float f32() {
        const std::uint32_t bits = u32();
        float v;
        std::memcpy(&v, &bits, 4);
        return v;
    }
    std::size_t remaining() const { return bytes_.size() - pos_; }
    bool done() const { return pos_ == bytes_.size(); }

private:
    void need(std::size_t n) {
        if (bytes_.size() - pos_ < n)
            throw ProtocolError(WireFault::truncated, "wire: message truncated");
    }
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

void encode_record(std::vector<std::uint8_t>& out, const TensorRecord& rec) {
    if (rec.dims.size() > kMaxRank)
        throw ProtocolError(WireFault::bad_field, "wire: tensor rank too large");
    if (rec.element_count() != rec.payload.size())
        throw ProtocolError(WireFault::length_mismatch,
                            "wire: payload length does not match dims");
    put_u8(out, static_cast<std::uint8_t>(rec.dims.size()));
    for (auto d : rec.dims) put_u32(out, d);
    for (float v : rec.payload) put_f32(out, v);
}

TensorRecord decode_record(Reader& in) {
    TensorRecord rec;
    const int rank = in.u8();
    if (rank == 0 || rank > kMaxRank)
        throw ProtocolError(WireFault::dim_overflow, "wire: tensor rank out of range");
    rec.dims.resize(rank);
    std::uint64_t elements = 1;
    for (auto& d : rec.dims) {
        d = in.u32();
        if (d == 0) throw ProtocolError(WireFault::dim_overflow, "wire: zero extent");
        elements *= d;
        if (elements > kMaxElements)
            throw ProtocolError(WireFault::dim_overflow, "wire: tensor exceeds size cap");
    }
    if (in.remaining() < elements * 4)
        throw ProtocolError(WireFault::truncated, "wire: tensor payload truncated");
    rec.payload.resize(elements);
    for (auto& v : rec.payload) v = in.f32();
    return rec;
}

} // namespace

std::vector<std::uint8_t> encode(const QueryMessage& msg) {
    if (msg.k > 64) throw ProtocolError(WireFault::bad_field, "wire: K out of range");
    if (msg.crucial.size() != static_cast<std::size_t>(msg.k) * 3)
        throw ProtocolError(WireFault::bad_field, "wire: crucial list size != 3K");
    if (msg.x_s.dims.size() != 3)
        throw ProtocolError(WireFault::bad_field, "wire: x_s record must be rank 3");
    if (msg.x_s.dims[0] != 192u - 3u * msg.k)
        throw ProtocolError(WireFault::bad_field, "wire: x_s channel count != 192 - 3K");
    if (msg.masks.size() > 255)
        throw ProtocolError(WireFault::bad_field, "wire: too many masks");
    for (std::size_t i = 0; i < msg.masks.size(); ++i) {
        if (msg.masks[i].dims.size() != 2)
            throw ProtocolError(WireFault::bad_field, "wire: mask record must be rank 2");
        if (i > 0 && msg.masks[i].element_count() >= msg.masks[i - 1].element_count())
            throw ProtocolError(WireFault::bad_field,
                                "wire: mask sizes must be strictly decreasing");
    }

    std::vector<std::uint8_t> out;
    out.insert(out.end(), kMagic.begin(), kMagic.end());
    put_u8(out, kVersion);
    std::uint8_t mode_byte = static_cast<std::uint8_t>(msg.mode);
    if (msg.masks_unrefined) mode_byte |= kFlagUnrefinedMasks;
    put_u8(out, mode_byte);
    put_u8(out, msg.k);
    put_u64(out, msg.query_id);
    for (auto c : msg.crucial) put_u8(out, c);
    encode_record(out, msg.x_s);
    put_u8(out, static_cast<std::uint8_t>(msg.masks.size()));
    for (const auto& m : msg.masks) encode_record(out, m);
    return out;
}

QueryMessage decode(std::span<const std::uint8_t> bytes) {
    Reader in(bytes);
    for (std::uint8_t expected : kMagic)
        if (in.u8() != expected)
            throw ProtocolError(WireFault::bad_magic, "wire: bad magic");
    const std::uint8_t version = in.u8();
    if (version != kVersion)
        throw ProtocolError(WireFault::bad_version, "wire: unsupported version");

    QueryMessage msg;
    const std::uint8_t mode_byte = in.u8();
    if ((mode_byte & ~(kFlagUnrefinedMasks | 0x01)) != 0)
        throw ProtocolError(WireFault::bad_field, "wire: unknown mode bits");
    msg.mode = static_cast<Mode>(mode_byte & 0x01);
    msg.masks_unrefined = (mode_byte & kFlagUnrefinedMasks) != 0;
    msg.k = in.u8();
    if (msg.k > 64) throw ProtocolError(WireFault::bad_field, "wire: K out of range");
    msg.query_id = in.u64();

    msg.crucial.resize(static_cast<std::size_t>(msg.k) * 3);
    int prev = -1;
    for (auto& c : msg.crucial) {
        c = in.u8();
        if (c >= 192 || static_cast<int>(c) <= prev)
            throw ProtocolError(WireFault::bad_field,
                                "wire: crucial ids must be ascending and < 192");
        prev = c;
    }
    try {
        spec_from_crucial(std::vector<int>(msg.crucial.begin(), msg.crucial.end()));
    } catch (const std::invalid_argument& e) {
        throw ProtocolError(WireFault::bad_field, std::string("wire: ") + e.what());
    }

    msg.x_s = decode_record(in);
    if (msg.x_s.dims.size() != 3)
        throw ProtocolError(WireFault::bad_field, "wire: x_s record must be rank 3");
    if (msg.x_s.dims[0] != 192u - 3u * msg.k)
        throw ProtocolError(WireFault::bad_field, "wire: x_s channel count != 192 - 3K");

    const std::uint8_t mask_count = in.u8();
    msg.masks.reserve(mask_count);
    for (int i = 0; i < mask_count; ++i) {
        TensorRecord rec = decode_record(in);
        if (rec.dims.size() != 2)
            throw ProtocolError(WireFault::bad_field, "wire: mask record must be rank 2");
        if (i > 0 && rec.element_count() >= msg.masks.back().element_count())
            throw ProtocolError(WireFault::bad_field,
                                "wire: mask sizes must be strictly decreasing");
        msg.masks.push_back(std::move(rec));
    }
    if (!in.done())
        throw ProtocolError(WireFault::length_mismatch, "wire: trailing bytes after message");
    return msg;
}

std::vector<std::uint8_t> encode_response(const ResponseMessage& msg) {
    if (msg.embedding.dims.size() != 1)
        throw ProtocolError(WireFault::bad_field, "wire: embedding record must be rank 1");
    std::vector<std::uint8_t> out;
    put_u64(out, msg.query_id);
    encode_record(out, msg.embedding);
    put_u64(out, msg.xs_elements);
    put_u64(out, msg.mask_elements);
    put_u64(out, msg.total_elements);
    return out;
}

ResponseMessage decode_response(std::span<const std::uint8_t> bytes) {
    Reader in(bytes);
    ResponseMessage msg;
    msg.query_id = in.u64();
    msg.embedding = decode_record(in);
    if (msg.embedding.dims.size() != 1)
        throw ProtocolError(WireFault::bad_field, "wire: embedding record must be rank 1");
    msg.xs_elements = in.u64();
    msg.mask_elements = in.u64();
    msg.total_elements = in.u64();
    if (!in.done())
        throw ProtocolError(WireFault::length_mismatch, "wire: trailing bytes after response");
    return msg;
}

std::vector<std::uint8_t> encode_record_bytes(const TensorRecord& rec) {
    std::vector<std::uint8_t> out;
    encode_record(out, rec);
    return out;
}

TensorRecord decode_record_bytes(std::span<const std::uint8_t> bytes) {
    Reader in(bytes);
    TensorRecord rec = decode_record(in);
    if (!in.done())
        throw ProtocolError(WireFault::length_mismatch, "wire: trailing bytes after record");
    return rec;
}

CommCost comm_cost(const QueryMessage& msg, Accounting accounting) {
    CommCost cost;
    cost.xs_elements = msg.x_s.element_count();
    if (accounting == Accounting::paper) {
        if (msg.mode != Mode::compact || msg.k != 10)
            throw std::invalid_argument(
                "comm_cost: paper accounting is defined for the compact K=10 configuration");
        // The published figure counts the compact payload as 160 channels.
        cost.xs_elements = static_cast<std::uint64_t>(msg.x_s.dims[1]) * msg.x_s.dims[2] * 160;
    }
    for (const auto& m : msg.masks) cost.mask_elements += m.element_count();
    cost.total = cost.xs_elements + cost.mask_elements;
    return cost;
}

} // namespace duet::wire
