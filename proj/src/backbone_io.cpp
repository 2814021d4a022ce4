#include <filesystem>
#include <fstream>
#include <sstream>

#include "duet/errors.hpp"
#include "duet/pipeline.hpp"

namespace duet {

namespace fs = std::filesystem;

namespace {

constexpr const char* kManifestName = "manifest.txt";
constexpr const char* kFormatTag = "duet-backbone";
constexpr int kFormatVersion = 1;

std::vector<std::uint8_t> read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return bytes;
}

void write_file(const fs::path& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("short write to " + path.string());
}

} // namespace

void save_backbone(const std::string& dir, const Backbone& net) {
    fs::create_directories(dir);
    std::ostringstream manifest;
    manifest << kFormatTag << ' ' << kFormatVersion << '\n';
    manifest << "input_channels " << net.input_channels << '\n';
    manifest << "stages " << kStages << '\n';
    for (int s = 0; s < kStages; ++s) {
        const ConvLayer& layer = net.layers[s];
        wire::TensorRecord rec;
        rec.dims = {static_cast<std::uint32_t>(layer.out_channels),
                    static_cast<std::uint32_t>(layer.in_channels), 3u, 3u};
        rec.payload.resize(layer.weights.size());
        for (std::size_t i = 0; i < layer.weights.size(); ++i)
            rec.payload[i] = static_cast<float>(layer.weights[i]);
        std::string name = "stage" + std::to_string(s) + ".bin";
        write_file(fs::path(dir) / name, wire::encode_record_bytes(rec));
        manifest << name << '\n';
    }
    const std::string text = manifest.str();
    std::ofstream out(fs::path(dir) / kManifestName, std::ios::trunc);
    if (!out) throw IoError("cannot write manifest in " + dir);
    out << text;
    if (!out) throw IoError("short write to manifest in " + dir);
}

Backbone load_backbone(const std::string& dir) {
    std::ifstream in(fs::path(dir) / kManifestName);
    if (!in) throw IoError("cannot open manifest in " + dir);

    std::string tag;
    int version = 0;
    if (!(in >> tag >> version) || tag != kFormatTag || version != kFormatVersion)
        throw IoError("unrecognized backbone manifest in " + dir);

    std::string key;
    Backbone net;
    int stages = 0;
    if (!(in >> key >> net.input_channels) || key != "input_channels" ||
        net.input_channels <= 0)
        throw IoError("bad input_channels line in backbone manifest");
    if (!(in >> key >> stages) || key != "stages" || stages != kStages)
        throw IoError("bad stages line in backbone manifest");

    int prev = net.input_channels;
    for (int s = 0; s < kStages; ++s) {
        std::string name;
        if (!(in >> name)) throw IoError("backbone manifest lists too few stages");
        wire::TensorRecord rec = wire::decode_record_bytes(read_file(fs::path(dir) / name));
        if (rec.dims.size() != 4 || rec.dims[2] != 3 || rec.dims[3] != 3)
            throw IoError("stage file " + name + " is not a 3x3 convolution record");
        ConvLayer& layer = net.layers[s];
        layer.out_channels = static_cast<int>(rec.dims[0]);
        layer.in_channels = static_cast<int>(rec.dims[1]);
        if (layer.in_channels != prev)
            throw IoError("stage file " + name + " does not chain with the previous stage");
        layer.weights.assign(rec.payload.begin(), rec.payload.end());
        net.stage_widths[s] = layer.out_channels;
        prev = layer.out_channels;
    }
    return net;
}

} // namespace duet
