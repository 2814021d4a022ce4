#pragma once

#include <string>
#include <vector>

#include "duet/color_frequency.hpp"

namespace duet {

// The crucial/non-crucial channel partition for one value of K. The same K
// zigzag positions are selected in Y, Cb and Cr, so |crucial| = 3K.
// Both index lists are kept in ascending channel order.
struct SplitSpec {
    int k = 0;
    std::vector<int> crucial;
    std::vector<int> noncrucial;
};

// A subset of frequency channels, channel ids ascending.
struct PartialTensor {
    int grid_h = 0;
    int grid_w = 0;
    std::vector<int> channel_ids;
    std::vector<double> data; // [channel][row][col]

    std::size_t plane_size() const { return static_cast<std::size_t>(grid_h) * grid_w; }
    double* channel(std::size_t i) { return data.data() + i * plane_size(); }
    const double* channel(std::size_t i) const { return data.data() + i * plane_size(); }
};

struct SplitPair {
    PartialTensor x_c; // crucial, client-kept
    PartialTensor x_s; // non-crucial, server-shared
    SplitSpec spec;
};

// Selects the K top-energy zigzag positions of the Y component and applies
// the same positions to Cb and Cr.
SplitSpec make_split_spec(const EnergyReport& report, int k);

// Rebuilds a full spec from the crucial channel list, validating that it is
// ascending, in range, and spatially consistent across components.
SplitSpec spec_from_crucial(const std::vector<int>& crucial);

SplitPair split(const FrequencyTensor& ft, const SplitSpec& spec);
FrequencyTensor merge(const SplitPair& pair);

// Missing channels become zero.
FrequencyTensor zero_pad(const PartialTensor& part);

// zero_pad + ibdct + RGB conversion; output is 8*grid_h x 8*grid_w.
ImageRGB zero_pad_reconstruct(const PartialTensor& part);

// Text record: K, then the 3K crucial indices, newline-separated.
std::string spec_to_text(const SplitSpec& spec);
SplitSpec spec_from_text(const std::string& text);
void save_spec(const std::string& path, const SplitSpec& spec);
SplitSpec load_spec(const std::string& path);

} // namespace duet
