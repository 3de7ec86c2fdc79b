#include "oor/csv_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

namespace oor {

std::string format_g9(double value) {
    if (value == 0.0) value = 0.0; // normalize -0
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 9);
    return std::string(buf, res.ptr);
}

double round_g9(double value) {
    const std::string s = format_g9(value);
    double out = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), out);
    return out;
}

double parse_double(const std::string& text) {
    double out = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    auto res = std::from_chars(begin, end, out);
    if (res.ec != std::errc{} || res.ptr != end)
        throw ParseError("not a number: '" + text + "'");
    return out;
}

namespace {

const char* unit_name(SpectrumKind kind) {
    return kind == SpectrumKind::absorbance ? "absorbance" : "per_m";
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

} // namespace

std::string spectrum_to_csv(const Spectrum& s) {
    std::string out = "wavelength_nm,value,kind,unit\n";
    const std::string kind = to_string(s.kind());
    const std::string unit = unit_name(s.kind());
    for (std::size_t i = 0; i < s.size(); ++i) {
        out += format_g9(s.wavelengths_nm()[i]);
        out += ',';
        out += format_g9(s.values()[i]);
        out += ',';
        out += kind;
        out += ',';
        out += unit;
        out += '\n';
    }
    return out;
}

Spectrum spectrum_from_csv(const std::string& text, const std::string& source_name) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line))
        throw ParseError(source_name + ": empty spectrum file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "wavelength_nm,value,kind,unit")
        throw ParseError(source_name + ": expected header 'wavelength_nm,value,kind,unit'");

    std::vector<double> wavelengths, values;
    std::string kind_name, unit;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line == "\r") continue;
        auto fields = split_csv_line(line);
        if (fields.size() != 4)
            throw ParseError(source_name + ": row " + std::to_string(row) + " needs 4 fields");
        if (kind_name.empty()) {
            kind_name = fields[2];
            unit = fields[3];
        } else if (fields[2] != kind_name || fields[3] != unit) {
            throw ParseError(source_name + ": kind/unit must be uniform across rows");
        }
        wavelengths.push_back(parse_double(fields[0]));
        values.push_back(parse_double(fields[1]));
    }
    if (wavelengths.empty()) throw ParseError(source_name + ": no data rows");

    const SpectrumKind kind = spectrum_kind_from_string(kind_name);
    double scale = 1.0;
    if (kind == SpectrumKind::absorbance) {
        if (unit != "absorbance")
            throw ParseError(source_name + ": absorbance spectra must use unit 'absorbance'");
    } else if (unit == "per_mm") {
        scale = 1000.0;
    } else if (unit != "per_m") {
        throw ParseError(source_name + ": unit must be per_m, per_mm or absorbance");
    }
    if (scale != 1.0)
        for (double& v : values) v *= scale;

    try {
        return Spectrum(std::move(wavelengths), std::move(values), kind, source_name);
    } catch (const Error& e) {
        throw ParseError(source_name + ": " + e.what());
    }
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write file: " + path.string());
    out << content;
    if (!out) throw ParseError("write failed: " + path.string());
}

Spectrum read_spectrum_csv(const std::filesystem::path& path) {
    return spectrum_from_csv(read_text_file(path), path.filename().string());
}

void write_spectrum_csv(const std::filesystem::path& path, const Spectrum& s) {
    write_text_file(path, spectrum_to_csv(s));
}

} // namespace oor
