#include "duet/channel_split.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>

#include "duet/errors.hpp"

namespace duet {

namespace {

PartialTensor gather(const FrequencyTensor& ft, const std::vector<int>& ids) {
    PartialTensor part;
    part.grid_h = ft.grid_h;
    part.grid_w = ft.grid_w;
    part.channel_ids = ids;
    part.data.resize(ids.size() * ft.plane_size());
    for (std::size_t i = 0; i < ids.size(); ++i)
        std::memcpy(part.channel(i), ft.channel(ids[i]), ft.plane_size() * sizeof(double));
    return part;
}

} // namespace

SplitSpec make_split_spec(const EnergyReport& report, int k) {
    if (k < 0 || k > kFreqPerComponent)
        throw std::invalid_argument("make_split_spec: K must be in [0,64]");

    // Top-K zigzag positions of the Y component, mirrored into Cb and Cr.
    SplitSpec spec;
    spec.k = k;
    std::vector<int> positions;
    positions.reserve(k);
    for (int i = 0; i < k; ++i) positions.push_back(channel_zigzag(report.ranking[0][i]));

    std::vector<bool> is_crucial(kFreqChannels, false);
    for (int comp = 0; comp < kComponents; ++comp)
        for (int z : positions) is_crucial[channel_id(comp, z)] = true;
    for (int c = 0; c < kFreqChannels; ++c)
        (is_crucial[c] ? spec.crucial : spec.noncrucial).push_back(c);
    return spec;
}

SplitSpec spec_from_crucial(const std::vector<int>& crucial) {
    if (crucial.size() % kComponents != 0)
        throw std::invalid_argument("spec_from_crucial: size must be a multiple of 3");
    const int k = static_cast<int>(crucial.size()) / kComponents;
    if (k > kFreqPerComponent)
        throw std::invalid_argument("spec_from_crucial: more than 64 positions per component");

    std::set<int> y_positions;
    std::vector<bool> seen(kFreqChannels, false);
    int prev = -1;
    for (int c : crucial) {
        if (c < 0 || c >= kFreqChannels)
            throw std::invalid_argument("spec_from_crucial: channel id out of range");
        if (c <= prev)
            throw std::invalid_argument("spec_from_crucial: ids must be strictly ascending");
        prev = c;
        seen[c] = true;
        if (channel_component(c) == 0) y_positions.insert(channel_zigzag(c));
    }
    if (static_cast<int>(y_positions.size()) != k)
        throw std::invalid_argument("spec_from_crucial: component selections differ");
    for (int z : y_positions)
        for (int comp = 1; comp < kComponents; ++comp)
            if (!seen[channel_id(comp, z)])
                throw std::invalid_argument("spec_from_crucial: component selections differ");

    SplitSpec spec;
    spec.k = k;
    spec.crucial = crucial;
    for (int c = 0; c < kFreqChannels; ++c)
        if (!seen[c]) spec.noncrucial.push_back(c);
    return spec;
}

SplitPair split(const FrequencyTensor& ft, const SplitSpec& spec) {
    if (static_cast<int>(spec.crucial.size() + spec.noncrucial.size()) != kFreqChannels)
        throw ShapeError("split: spec does not cover 192 channels");
    SplitPair pair;
    pair.spec = spec;
    pair.x_c = gather(ft, spec.crucial);
    pair.x_s = gather(ft, spec.noncrucial);
    return pair;
}

FrequencyTensor merge(const SplitPair& pair) {
    if (pair.x_c.channel_ids.size() + pair.x_s.channel_ids.size() !=
        static_cast<std::size_t>(kFreqChannels))
        throw ShapeError("merge: parts do not cover 192 channels");
    if (pair.x_c.grid_h != pair.x_s.grid_h || pair.x_c.grid_w != pair.x_s.grid_w)
        throw ShapeError("merge: part grids differ");

    FrequencyTensor ft(pair.x_c.grid_h, pair.x_c.grid_w);
    std::vector<bool> seen(kFreqChannels, false);
    for (const PartialTensor* part : {&pair.x_c, &pair.x_s}) {
        for (std::size_t i = 0; i < part->channel_ids.size(); ++i) {
            int c = part->channel_ids[i];
            if (c < 0 || c >= kFreqChannels || seen[c])
                throw ShapeError("merge: invalid or duplicated channel id");
            seen[c] = true;
            std::memcpy(ft.channel(c), part->channel(i), ft.plane_size() * sizeof(double));
        }
    }
    return ft;
}

FrequencyTensor zero_pad(const PartialTensor& part) {
    FrequencyTensor ft(part.grid_h, part.grid_w);
    for (std::size_t i = 0; i < part.channel_ids.size(); ++i) {
        int c = part.channel_ids[i];
        if (c < 0 || c >= kFreqChannels)
            throw ShapeError("zero_pad: channel id out of range");
        std::memcpy(ft.channel(c), part.channel(i), ft.plane_size() * sizeof(double));
    }
    return ft;
}

ImageRGB zero_pad_reconstruct(const PartialTensor& part) {
    return ycbcr_to_rgb(ibdct(zero_pad(part)));
}

std::string spec_to_text(const SplitSpec& spec) {
    std::ostringstream out;
    out << spec.k << "\n";
    for (int c : spec.crucial) out << c << "\n";
    return out.str();
}

SplitSpec spec_from_text(const std::string& text) {
    std::istringstream in(text);
    int k = -1;
    if (!(in >> k) || k < 0 || k > kFreqPerComponent)
        throw IoError("split spec: bad K value");
    std::vector<int> crucial(static_cast<std::size_t>(k) * kComponents);
    for (auto& c : crucial)
        if (!(in >> c)) throw IoError("split spec: truncated index list");
    int extra;
    if (in >> extra) throw IoError("split spec: trailing data");
    try {
        return spec_from_crucial(crucial);
    } catch (const std::invalid_argument& e) {
        throw IoError(std::string("split spec: ") + e.what());
    }
}

void save_spec(const std::string& path, const SplitSpec& spec) {
    std::ofstream out(path);
    if (!out) throw IoError("split spec: cannot create " + path);
    out << spec_to_text(spec);
    if (!out) throw IoError("split spec: write failed for " + path);
}

SplitSpec load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("split spec: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return spec_from_text(buf.str());
}

} // namespace duet
