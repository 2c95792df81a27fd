#include "caj/io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace caj::io {

namespace {

constexpr std::uint32_t kFormatVersion = 1;
constexpr char kFeatureMagic[4] = {'C', 'A', 'J', 'F'};
constexpr char kMatrixMagic[4] = {'C', 'A', 'J', 'D'};

void write_u32(std::ostream& os, std::uint32_t v) {
    const std::array<unsigned char, 4> b = {
        static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
        static_cast<unsigned char>(v >> 16), static_cast<unsigned char>(v >> 24)};
    os.write(reinterpret_cast<const char*>(b.data()), 4);
}

void write_u64(std::ostream& os, std::uint64_t v) {
    write_u32(os, static_cast<std::uint32_t>(v));
    write_u32(os, static_cast<std::uint32_t>(v >> 32));
}

std::uint32_t read_u32(std::istream& is, const std::string& what) {
    std::array<unsigned char, 4> b;
    if (!is.read(reinterpret_cast<char*>(b.data()), 4))
        throw TruncatedError("truncated " + what);
    return static_cast<std::uint32_t>(b[0]) | static_cast<std::uint32_t>(b[1]) << 8 |
           static_cast<std::uint32_t>(b[2]) << 16 | static_cast<std::uint32_t>(b[3]) << 24;
}

std::uint64_t read_u64(std::istream& is, const std::string& what) {
    const std::uint64_t lo = read_u32(is, what);
    const std::uint64_t hi = read_u32(is, what);
    return lo | hi << 32;
}

void check_magic(std::istream& is, const char (&expected)[4], const std::string& path) {
    char magic[4];
    if (!is.read(magic, 4)) throw TruncatedError(path + ": file shorter than the magic");
    if (std::memcmp(magic, expected, 4) != 0)
        throw BadMagicError(path + ": bad magic '" + std::string(magic, 4) + "', expected '" +
                            std::string(expected, 4) + "'");
}

void check_version(std::uint32_t version, const std::string& path) {
    if (version != kFormatVersion)
        throw UnsupportedVersionError(path + ": unsupported format version " +
                                      std::to_string(version));
}

void check_at_end(std::istream& is, const std::string& path) {
    if (is.peek() != std::char_traits<char>::eof())
        throw FormatError(path + ": trailing bytes after the declared payload");
}

std::ifstream open_input(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw IoError("cannot open " + path);
    return file;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot open " + path + " for writing");
    return file;
}

}  // namespace

FeatureMatrix read_features(const std::string& path) {
    std::ifstream file = open_input(path);
    check_magic(file, kFeatureMagic, path);
    check_version(read_u32(file, path + ": header"), path);
    const std::uint32_t n = read_u32(file, path + ": header");
    const std::uint32_t d = read_u32(file, path + ": header");
    if (n == 0 || d == 0) throw FormatError(path + ": empty dimensions in header");

    FeatureMatrix out(n, d);
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < d; ++j)
            out(i, j) = std::bit_cast<float>(read_u32(file, path + ": payload"));
    check_at_end(file, path);
    return out;
}

void write_features(const FeatureMatrix& features, const std::string& path) {
    std::ofstream file = open_output(path);
    file.write(kFeatureMagic, 4);
    write_u32(file, kFormatVersion);
    write_u32(file, static_cast<std::uint32_t>(features.rows()));
    write_u32(file, static_cast<std::uint32_t>(features.cols()));
    for (Index i = 0; i < features.rows(); ++i)
        for (Index j = 0; j < features.cols(); ++j)
            write_u32(file, std::bit_cast<std::uint32_t>(static_cast<float>(features(i, j))));
    if (!file) throw IoError("write failed: " + path);
}

FeatureMatrix quantize_to_file_precision(const FeatureMatrix& features) {
    FeatureMatrix out(features.rows(), features.cols());
    for (Index i = 0; i < features.rows(); ++i)
        for (Index j = 0; j < features.cols(); ++j)
            out(i, j) = static_cast<double>(static_cast<float>(features(i, j)));
    return out;
}

namespace {

int parse_int(const std::string& field, const std::string& path, std::size_t line) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size())
        throw FormatError(path + ":" + std::to_string(line) + ": expected an integer, got '" +
                          field + "'");
    return value;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        out.push_back(s.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

}  // namespace

SampleMeta read_labels(const std::string& path) {
    std::ifstream file = open_input(path);
    std::string line;
    if (!std::getline(file, line)) throw FormatError(path + ": empty label file");
    line = strip_cr(line);
    bool with_identity;
    if (line == "index,camera,identity")
        with_identity = true;
    else if (line == "index,camera")
        with_identity = false;
    else
        throw FormatError(path + ": unexpected header '" + line + "'");

    SampleMeta meta;
    std::size_t lineno = 1;
    while (std::getline(file, line)) {
        ++lineno;
        line = strip_cr(line);
        if (line.empty()) continue;
        const auto fields = split(line, ',');
        if (fields.size() != (with_identity ? 3u : 2u))
            throw FormatError(path + ":" + std::to_string(lineno) + ": expected " +
                              std::to_string(with_identity ? 3 : 2) + " fields");
        const int index = parse_int(fields[0], path, lineno);
        if (index != static_cast<int>(meta.camera.size()))
            throw FormatError(path + ":" + std::to_string(lineno) +
                              ": indices must be consecutive from 0, got " +
                              std::to_string(index));
        meta.camera.push_back(parse_int(fields[1], path, lineno));
        if (with_identity) meta.identity.push_back(parse_int(fields[2], path, lineno));
    }
    if (meta.camera.empty()) throw FormatError(path + ": no label rows");
    return meta;
}

void write_labels(const SampleMeta& meta, const std::string& path) {
    std::ofstream file = open_output(path);
    file << (meta.has_identity() ? "index,camera,identity\n" : "index,camera\n");
    for (std::size_t i = 0; i < meta.size(); ++i) {
        file << i << ',' << meta.camera[i];
        if (meta.has_identity()) file << ',' << meta.identity[i];
        file << '\n';
    }
    if (!file) throw IoError("write failed: " + path);
}

DistanceMatrix read_matrix(const std::string& path) {
    std::ifstream file = open_input(path);
    check_magic(file, kMatrixMagic, path);
    check_version(read_u32(file, path + ": header"), path);
    const std::uint32_t kind = read_u32(file, path + ": header");
    if (kind > static_cast<std::uint32_t>(DistanceKind::blended))
        throw FormatError(path + ": unknown distance kind " + std::to_string(kind));
    const std::uint32_t rows = read_u32(file, path + ": header");
    const std::uint32_t cols = read_u32(file, path + ": header");
    if (rows == 0 || cols == 0) throw FormatError(path + ": empty dimensions in header");

    DistanceMatrix out;
    out.kind = static_cast<DistanceKind>(kind);
    out.data.resize(rows, cols);
    for (std::uint32_t i = 0; i < rows; ++i)
        for (std::uint32_t j = 0; j < cols; ++j)
            out.data(i, j) = std::bit_cast<double>(read_u64(file, path + ": payload"));
    check_at_end(file, path);
    return out;
}

Matrix read_matrix_csv(const std::string& path) {
    std::ifstream file = open_input(path);
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(file, line)) {
        ++lineno;
        line = strip_cr(line);
        if (line.empty()) continue;
        const auto fields = split(line, ',');
        std::vector<double> row;
        row.reserve(fields.size());
        for (const std::string& f : fields) {
            double value = 0.0;
            const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), value);
            if (ec != std::errc() || ptr != f.data() + f.size())
                throw FormatError(path + ":" + std::to_string(lineno) +
                                  ": expected a number, got '" + f + "'");
            row.push_back(value);
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw FormatError(path + ":" + std::to_string(lineno) + ": ragged row");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw FormatError(path + ": empty matrix file");
    Matrix out(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) out(i, j) = rows[i][j];
    return out;
}

void write_matrix(const DistanceMatrix& dist, const std::string& path,
                  MatrixFileFormat format) {
    std::ofstream file = open_output(path);
    if (format == MatrixFileFormat::binary) {
        file.write(kMatrixMagic, 4);
        write_u32(file, kFormatVersion);
        write_u32(file, static_cast<std::uint32_t>(dist.kind));
        write_u32(file, static_cast<std::uint32_t>(dist.rows()));
        write_u32(file, static_cast<std::uint32_t>(dist.cols()));
        for (Index i = 0; i < dist.rows(); ++i)
            for (Index j = 0; j < dist.cols(); ++j)
                write_u64(file, std::bit_cast<std::uint64_t>(dist.data(i, j)));
    } else {
        char buf[32];
        for (Index i = 0; i < dist.rows(); ++i) {
            for (Index j = 0; j < dist.cols(); ++j) {
                // 17 significant digits round-trip a double exactly.
                std::snprintf(buf, sizeof buf, "%.17g", dist.data(i, j));
                if (j > 0) file << ',';
                file << buf;
            }
            file << '\n';
        }
    }
    if (!file) throw IoError("write failed: " + path);
}

}  // namespace caj::io
