#pragma once

#include <optional>
#include <string>

#include "duet/attention_transfer.hpp"
#include "duet/channel_split.hpp"
#include "duet/facial_roi.hpp"
#include "duet/toy_backbone.hpp"
#include "duet/wire.hpp"

namespace duet {

struct RunConfig {
    int k = 10;
    wire::Mode mode = wire::Mode::compact;
    std::uint64_t seed = 1234;
    std::array<double, kStages> interaction_weights{1.0, 1.0, 1.0, 1.0};
    std::uint64_t query_id = 1;
    std::optional<SplitSpec> fixed_spec; // reuse a calibration-time spec
};

// The server backbone stream is offset so client and server weights differ
// under one user-facing seed.
inline constexpr std::uint64_t kServerSeedOffset = 1;

struct ClientResult {
    wire::QueryMessage message;
    SplitSpec spec;
    bool roi_applied = false;
};

// Client pipeline: color conversion, canonical (non-upsampled) BDCT for the
// split spec, full-geometry X_c for the client backbone, per-stage masks,
// ROI refinement, message assembly. The raw image and X_c never enter the
// message. Degenerate landmarks fall back to unrefined masks and set the
// warning flag.
ClientResult client_run(const ImageRGB& image, const std::optional<LandmarkSet>& landmarks,
                        const Backbone& client_net, const RunConfig& cfg);

struct ServerContext {
    Backbone backbone;
    std::array<double, kStages> interaction_weights{1.0, 1.0, 1.0, 1.0};
};

// Server pipeline: compact payloads are lifted back to 112x112 geometry
// (zero-pad, inverse BDCT, 8x upsample, BDCT, re-select non-crucial), then
// the stages run with the interactive update applied after each one.
wire::ResponseMessage server_run(const ServerContext& ctx, const wire::QueryMessage& msg);

// Canonical per-image split: BDCT of the image without upsampling.
SplitPair split_image(const ImageRGB& image, int k,
                      const std::optional<SplitSpec>& fixed_spec = std::nullopt);

// Weight files: a manifest listing one tensor-record file per stage.
void save_backbone(const std::string& dir, const Backbone& net);
Backbone load_backbone(const std::string& dir);

} // namespace duet
