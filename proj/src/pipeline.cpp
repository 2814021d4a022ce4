#include "duet/pipeline.hpp"

#include <algorithm>
#include <utility>

#include "duet/errors.hpp"

namespace duet {

namespace {

std::vector<float> to_f32(const std::vector<double>& v) {
    std::vector<float> out(v.size());
    std::transform(v.begin(), v.end(), out.begin(),
                   [](double x) { return static_cast<float>(x); });
    return out;
}

Tensor3 to_tensor(const PartialTensor& part) {
    Tensor3 t(static_cast<int>(part.channel_ids.size()), part.grid_h, part.grid_w);
    std::copy(part.data.begin(), part.data.end(), t.data.begin());
    return t;
}

wire::TensorRecord partial_record(const PartialTensor& part) {
    wire::TensorRecord rec;
    rec.dims = {static_cast<std::uint32_t>(part.channel_ids.size()),
                static_cast<std::uint32_t>(part.grid_h),
                static_cast<std::uint32_t>(part.grid_w)};
    rec.payload = to_f32(part.data);
    return rec;
}

wire::TensorRecord mask_record(const FeatureMask& mask) {
    wire::TensorRecord rec;
    rec.dims = {static_cast<std::uint32_t>(mask.height),
                static_cast<std::uint32_t>(mask.width)};
    rec.payload = to_f32(mask.data);
    return rec;
}

FeatureMask mask_from_record(const wire::TensorRecord& rec) {
    if (rec.dims.size() != 2)
        throw ShapeError("pipeline: mask record must be rank 2");
    FeatureMask mask(static_cast<int>(rec.dims[0]), static_cast<int>(rec.dims[1]));
    std::copy(rec.payload.begin(), rec.payload.end(), mask.data.begin());
    return mask;
}

} // namespace

SplitPair split_image(const ImageRGB& image, int k,
                      const std::optional<SplitSpec>& fixed_spec) {
    FrequencyTensor canonical = bdct(rgb_to_ycbcr(image));
    SplitSpec spec = fixed_spec ? *fixed_spec : make_split_spec(channel_energy(canonical), k);
    return split(canonical, spec);
}

ClientResult client_run(const ImageRGB& image, const std::optional<LandmarkSet>& landmarks,
                        const Backbone& client_net, const RunConfig& cfg) {
    ImageYCbCr ycc = rgb_to_ycbcr(image);

    // The split spec is always chosen on the canonical (non-upsampled)
    // transform, so both transmission modes withhold the same channels.
    FrequencyTensor canonical = bdct(ycc);
    SplitSpec spec =
        cfg.fixed_spec ? *cfg.fixed_spec : make_split_spec(channel_energy(canonical), cfg.k);

    if (client_net.input_channels != 3 * spec.k)
        throw ShapeError("pipeline: client backbone expects " +
                         std::to_string(client_net.input_channels) + " channels, split has " +
                         std::to_string(3 * spec.k));

    // Client features always come from the full-geometry transform; the mask
    // pyramid must line up with the server's feature sizes.
    FrequencyTensor full = bdct(upsample8(ycc));
    SplitPair full_pair = split(full, spec);

    Tensor3 x = to_tensor(full_pair.x_c);
    MaskBundle masks;
    masks.reserve(kStages);
    for (int s = 0; s < kStages; ++s) {
        x = stage_forward(client_net, s, x);
        masks.push_back(compute_mask(x));
    }

    bool refined = false;
    if (landmarks) {
        try {
            Polygon hull = convex_hull(*landmarks);
            for (auto& m : masks)
                m = refine_mask(m, rasterize_hull(hull, m.height, m.width));
            refined = true;
        } catch (const GeometryError&) {
            refined = false; // degenerate landmarks: send the coarse masks
        }
    }

    wire::QueryMessage msg;
    msg.mode = cfg.mode;
    msg.masks_unrefined = !refined;
    msg.k = static_cast<std::uint8_t>(spec.k);
    msg.query_id = cfg.query_id;
    msg.crucial.assign(spec.crucial.begin(), spec.crucial.end());
    if (cfg.mode == wire::Mode::full) {
        msg.x_s = partial_record(full_pair.x_s);
    } else {
        msg.x_s = partial_record(split(canonical, spec).x_s);
    }
    msg.masks.reserve(masks.size());
    for (const auto& m : masks) msg.masks.push_back(mask_record(m));

    ClientResult result;
    result.message = std::move(msg);
    result.spec = std::move(spec);
    result.roi_applied = refined;
    return result;
}

wire::ResponseMessage server_run(const ServerContext& ctx, const wire::QueryMessage& msg) {
    SplitSpec spec = spec_from_crucial(std::vector<int>(msg.crucial.begin(), msg.crucial.end()));

    if (msg.x_s.dims.size() != 3)
        throw ShapeError("pipeline: x_s record must be rank 3");
    if (static_cast<int>(msg.x_s.dims[0]) != kFreqChannels - 3 * spec.k)
        throw ShapeError("pipeline: x_s channel count does not match the crucial list");
    if (static_cast<int>(msg.masks.size()) != kStages)
        throw ShapeError("pipeline: expected " + std::to_string(kStages) + " masks, got " +
                         std::to_string(msg.masks.size()));
    if (ctx.backbone.input_channels != kFreqChannels - 3 * spec.k)
        throw ShapeError("pipeline: server backbone width does not match the split");

    PartialTensor xs;
    xs.grid_h = static_cast<int>(msg.x_s.dims[1]);
    xs.grid_w = static_cast<int>(msg.x_s.dims[2]);
    xs.channel_ids = spec.noncrucial;
    xs.data.assign(msg.x_s.payload.begin(), msg.x_s.payload.end());

    if (msg.mode == wire::Mode::compact) {
        // Lift the canonical-geometry payload to backbone geometry: fill the
        // withheld channels with zeros, return to pixels, upsample 8x, and
        // transform back. The withheld channels reappear with small nonzero
        // values; only the transmitted set feeds the backbone.
        ImageYCbCr small = ibdct(zero_pad(xs));
        FrequencyTensor lifted = bdct(upsample8(small));
        xs = split(lifted, spec).x_s;
    }

    Tensor3 x = to_tensor(xs);
    for (int s = 0; s < kStages; ++s) {
        x = stage_forward(ctx.backbone, s, x);
        FeatureMask m = resize_mask(mask_from_record(msg.masks[s]), x.height, x.width);
        x = interactive_update(x, m, ctx.interaction_weights[s]);
    }
    Embedding emb = embed(ctx.backbone, x);

    wire::ResponseMessage resp;
    resp.query_id = msg.query_id;
    resp.embedding.dims = {static_cast<std::uint32_t>(emb.values.size())};
    resp.embedding.payload = to_f32(emb.values);
    wire::CommCost cost = wire::comm_cost(msg);
    resp.xs_elements = cost.xs_elements;
    resp.mask_elements = cost.mask_elements;
    resp.total_elements = cost.total;
    return resp;
}

} // namespace duet
