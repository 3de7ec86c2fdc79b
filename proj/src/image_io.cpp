#include "oor/image_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "oor/csv_io.hpp"

namespace oor {

double srgb_decode(double encoded) {
    if (encoded <= 0.04045) return encoded / 12.92;
    return std::pow((encoded + 0.055) / 1.055, 2.4);
}

double srgb_encode(double linear) {
    if (linear <= 0.0031308) return linear * 12.92;
    return 1.055 * std::pow(linear, 1.0 / 2.4) - 0.055;
}

namespace {

// Reads one whitespace-delimited token, skipping '#' comment lines.
std::string next_token(std::istream& in, const std::string& path) {
    std::string tok;
    while (in >> tok) {
        if (tok[0] == '#') {
            std::string rest;
            std::getline(in, rest);
            continue;
        }
        return tok;
    }
    throw ParseError(path + ": truncated netpbm header");
}

long next_int(std::istream& in, const std::string& path) {
    const std::string tok = next_token(in, path);
    try {
        return std::stol(tok);
    } catch (...) {
        throw ParseError(path + ": expected integer, got '" + tok + "'");
    }
}

} // namespace

Image read_ppm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open image: " + path.string());
    const std::string name = path.filename().string();
    const std::string magic = next_token(in, name);
    if (magic != "P6" && magic != "P3") throw ParseError(name + ": expected a P6/P3 PPM");
    const long w = next_int(in, name);
    const long h = next_int(in, name);
    const long maxval = next_int(in, name);
    if (w <= 0 || h <= 0) throw ParseError(name + ": bad image dimensions");
    if (maxval != 255) throw ParseError(name + ": only maxval 255 is supported");

    Image img;
    img.width = static_cast<std::size_t>(w);
    img.height = static_cast<std::size_t>(h);
    img.pixels.resize(img.width * img.height * 3);

    if (magic == "P6") {
        in.get(); // single whitespace after maxval
        std::vector<unsigned char> raw(img.pixels.size());
        in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
        if (static_cast<std::size_t>(in.gcount()) != raw.size())
            throw ParseError(name + ": truncated pixel data");
        for (std::size_t i = 0; i < raw.size(); ++i)
            img.pixels[i] = srgb_decode(raw[i] / 255.0);
    } else {
        for (double& px : img.pixels) {
            const long v = next_int(in, name);
            if (v < 0 || v > 255) throw ParseError(name + ": sample out of range");
            px = srgb_decode(static_cast<double>(v) / 255.0);
        }
    }
    return img;
}

void write_ppm(const std::filesystem::path& path, const Image& image) {
    image.validate();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write image: " + path.string());
    out << "P6\n" << image.width << " " << image.height << "\n255\n";
    std::vector<unsigned char> raw(image.pixels.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const double encoded = srgb_encode(image.pixels[i]);
        raw[i] = static_cast<unsigned char>(std::lround(encoded * 255.0));
    }
    out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (!out) throw ParseError("write failed: " + path.string());
}

DistanceMap read_distance_csv(const std::filesystem::path& path) {
    const std::string text = read_text_file(path);
    std::istringstream in(text);
    std::string line;
    DistanceMap map;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        std::size_t count = 0;
        while (std::getline(row, cell, ',')) {
            map.meters.push_back(parse_double(cell));
            ++count;
        }
        if (map.width == 0)
            map.width = count;
        else if (count != map.width)
            throw ParseError(path.filename().string() + ": ragged distance rows");
        ++map.height;
    }
    if (map.width == 0) throw ParseError(path.filename().string() + ": empty distance map");
    map.validate();
    return map;
}

void write_distance_csv(const std::filesystem::path& path, const DistanceMap& map) {
    map.validate();
    std::string out;
    for (std::size_t y = 0; y < map.height; ++y) {
        for (std::size_t x = 0; x < map.width; ++x) {
            if (x) out += ',';
            out += format_g9(map.meters[y * map.width + x]);
        }
        out += '\n';
    }
    write_text_file(path, out);
}

DistanceMap read_distance_pgm(const std::filesystem::path& path, double scale) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open distance map: " + path.string());
    const std::string name = path.filename().string();
    const std::string magic = next_token(in, name);
    if (magic != "P5" && magic != "P2") throw ParseError(name + ": expected a P5/P2 PGM");
    const long w = next_int(in, name);
    const long h = next_int(in, name);
    const long maxval = next_int(in, name);
    if (w <= 0 || h <= 0) throw ParseError(name + ": bad dimensions");
    if (maxval <= 0 || maxval > 65535) throw ParseError(name + ": unsupported maxval");

    DistanceMap map;
    map.width = static_cast<std::size_t>(w);
    map.height = static_cast<std::size_t>(h);
    map.meters.resize(map.width * map.height);

    if (magic == "P5") {
        in.get();
        const bool wide = maxval > 255;
        std::vector<unsigned char> raw(map.meters.size() * (wide ? 2 : 1));
        in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
        if (static_cast<std::size_t>(in.gcount()) != raw.size())
            throw ParseError(name + ": truncated pixel data");
        for (std::size_t i = 0; i < map.meters.size(); ++i) {
            const long v = wide ? (raw[2 * i] << 8) | raw[2 * i + 1] : raw[i];
            map.meters[i] = static_cast<double>(v) * scale;
        }
    } else {
        for (double& d : map.meters) {
            const long v = next_int(in, name);
            if (v < 0 || v > maxval) throw ParseError(name + ": sample out of range");
            d = static_cast<double>(v) * scale;
        }
    }
    map.validate();
    return map;
}

DistanceMap read_distance_file(const std::filesystem::path& path, double scale) {
    const auto ext = path.extension().string();
    if (ext == ".pgm") return read_distance_pgm(path, scale);
    return read_distance_csv(path);
}

} // namespace oor
