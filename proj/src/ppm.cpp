#include "duet/ppm.hpp"

#include <cctype>
#include <fstream>

#include "duet/errors.hpp"

namespace duet {

namespace {

// Skips whitespace and '#' comment lines between header tokens.
int next_header_int(std::istream& in, const std::string& path) {
    int ch = in.get();
    while (ch != EOF) {
        if (ch == '#') {
            while (ch != EOF && ch != '\n') ch = in.get();
        } else if (!std::isspace(ch)) {
            break;
        }
        ch = in.get();
    }
    if (ch == EOF || !std::isdigit(ch))
        throw IoError("ppm: malformed header in " + path);
    long value = 0;
    while (ch != EOF && std::isdigit(ch)) {
        value = value * 10 + (ch - '0');
        if (value > 1 << 20) throw IoError("ppm: header value out of range in " + path);
        ch = in.get();
    }
    if (ch != EOF) in.unget();
    return static_cast<int>(value);
}

} // namespace

ImageRGB read_ppm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("ppm: cannot open " + path);

    char m0 = 0, m1 = 0;
    in.get(m0);
    in.get(m1);
    if (m0 != 'P' || m1 != '6') throw IoError("ppm: not a P6 file: " + path);

    int width = next_header_int(in, path);
    int height = next_header_int(in, path);
    int maxval = next_header_int(in, path);
    if (width <= 0 || height <= 0) throw IoError("ppm: bad dimensions in " + path);
    if (maxval != 255) throw IoError("ppm: only 8-bit maxval 255 supported: " + path);
    in.get(); // single whitespace before binary data

    ImageRGB img(height, width);
    in.read(reinterpret_cast<char*>(img.data.data()),
            static_cast<std::streamsize>(img.data.size()));
    if (in.gcount() != static_cast<std::streamsize>(img.data.size()))
        throw IoError("ppm: truncated pixel data in " + path);
    return img;
}

void write_ppm(const std::string& path, const ImageRGB& img) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("ppm: cannot create " + path);
    out << "P6\n" << img.width << " " << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.data.data()),
              static_cast<std::streamsize>(img.data.size()));
    if (!out) throw IoError("ppm: write failed for " + path);
}

} // namespace duet
