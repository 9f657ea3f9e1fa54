#include "fmdkit/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fmd::io {

namespace {

[[noreturn]] void fail(const std::filesystem::path& path, const std::string& what) {
    throw std::runtime_error(path.string() + ": " + what);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

double parse_double(std::string_view token, const std::filesystem::path& path, std::size_t lineno) {
    double v = 0.0;
    const auto [p, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc{} || p != token.data() + token.size())
        fail(path, "line " + std::to_string(lineno) + ": cannot parse '" + std::string(token) + "' as a number");
    if (!std::isfinite(v))
        fail(path, "line " + std::to_string(lineno) + ": non-finite value");
    return v;
}

Signal read_csv1d(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(path, "cannot open for reading");
    std::vector<double> vals;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string_view t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        vals.push_back(parse_double(t, path, lineno));
    }
    if (vals.empty()) fail(path, "no samples found (empty file?)");
    return Signal::real_1d(std::move(vals));
}

// PGM header tokenizer: skips whitespace and '#' comments, tracks the byte
// offset for error messages.
struct PgmLexer {
    std::istream& in;
    const std::filesystem::path& path;

    int skip_space_and_comments() {
        int c;
        while ((c = in.get()) != EOF) {
            if (c == '#') {
                while ((c = in.get()) != EOF && c != '\n') {}
                continue;
            }
            if (!std::isspace(c)) return c;
        }
        return EOF;
    }

    long token_int(const char* what) {
        const int first = skip_space_and_comments();
        if (first == EOF) fail(path, std::string("unexpected end of file while reading ") + what);
        std::string tok(1, static_cast<char>(first));
        int c;
        while ((c = in.peek()) != EOF && !std::isspace(c) && c != '#') {
            tok.push_back(static_cast<char>(in.get()));
        }
        long v = 0;
        const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc{} || p != tok.data() + tok.size())
            fail(path, "byte " + std::to_string(static_cast<long>(in.tellg())) + ": bad " +
                           std::string(what) + " token '" + tok + "'");
        return v;
    }
};

Signal read_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(path, "cannot open for reading");
    char m0 = 0, m1 = 0;
    in.get(m0);
    in.get(m1);
    if (!in || m0 != 'P' || (m1 != '2' && m1 != '5'))
        fail(path, "not a PGM file (expected P2 or P5 magic)");
    const bool binary = (m1 == '5');

    PgmLexer lex{in, path};
    const long w = lex.token_int("width");
    const long h = lex.token_int("height");
    const long maxval = lex.token_int("maxval");
    if (w <= 0 || h <= 0) fail(path, "dimensions must be positive");
    if (maxval <= 0 || maxval > 65535)
        fail(path, "unsupported maxval " + std::to_string(maxval) + " (must be 1..65535)");

    const std::size_t count = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
    std::vector<double> px(count);
    if (binary) {
        // exactly one whitespace byte separates the header from the raster
        const int sep = in.get();
        if (sep == EOF || !std::isspace(sep)) fail(path, "missing raster separator after maxval");
        const int bytes_per = maxval > 255 ? 2 : 1;
        std::vector<unsigned char> raw(count * static_cast<std::size_t>(bytes_per));
        in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
        if (static_cast<std::size_t>(in.gcount()) != raw.size())
            fail(path, "truncated raster: expected " + std::to_string(raw.size()) + " bytes, got " +
                           std::to_string(in.gcount()));
        for (std::size_t i = 0; i < count; ++i) {
            const unsigned v = bytes_per == 1
                                   ? raw[i]
                                   : (static_cast<unsigned>(raw[2 * i]) << 8) | raw[2 * i + 1];
            if (v > static_cast<unsigned>(maxval))
                fail(path, "pixel " + std::to_string(i) + " exceeds maxval");
            px[i] = static_cast<double>(v);
        }
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            const long v = lex.token_int("pixel");
            if (v < 0 || v > maxval)
                fail(path, "pixel " + std::to_string(i) + " out of range 0.." + std::to_string(maxval));
            px[i] = static_cast<double>(v);
        }
    }
    return Signal::real_2d(static_cast<std::size_t>(h), static_cast<std::size_t>(w), std::move(px));
}

}  // namespace

SignalFormat parse_format(const std::string& name) {
    if (name == "csv1d") return SignalFormat::csv1d;
    if (name == "pgm") return SignalFormat::pgm;
    throw std::invalid_argument("unknown signal format '" + name + "' (expected csv1d or pgm)");
}

Signal read_signal(const std::filesystem::path& path, SignalFormat format) {
    switch (format) {
        case SignalFormat::csv1d: return read_csv1d(path);
        case SignalFormat::pgm: return read_pgm(path);
    }
    throw std::logic_error("read_signal: unknown format");
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void write_signal_csv1d(const Signal& x, const std::filesystem::path& path) {
    if (x.ndim() != 1 || !x.is_real())
        throw std::invalid_argument("write_signal_csv1d: 1D real signals only");
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(path, "cannot open for writing");
    for (std::size_t i = 0; i < x.size(); ++i) out << format_double(x[i].real()) << '\n';
    if (!out) fail(path, "write failed");
}

PgmScale write_signal_pgm(const Signal& x, const std::filesystem::path& path, int maxval,
                          bool binary) {
    if (x.ndim() != 2 || !x.is_real())
        throw std::invalid_argument("write_signal_pgm: 2D real signals only");
    if (maxval < 1 || maxval > 65535)
        throw std::invalid_argument("write_signal_pgm: maxval must be 1..65535");

    double lo = x[0].real(), hi = x[0].real();
    for (std::size_t i = 1; i < x.size(); ++i) {
        lo = std::min(lo, x[i].real());
        hi = std::max(hi, x[i].real());
    }
    PgmScale scale;
    scale.min = lo;
    scale.scale = hi > lo ? static_cast<double>(maxval) / (hi - lo) : 0.0;
    if (lo == 0.0 && hi == 0.0) scale.min = 0.0;  // zero-energy: record (0, 0)

    std::ofstream out(path, std::ios::binary);
    if (!out) fail(path, "cannot open for writing");
    out << (binary ? "P5" : "P2") << '\n'
        << x.cols() << ' ' << x.rows() << '\n'
        << maxval << '\n';
    const int bytes_per = maxval > 255 ? 2 : 1;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double v = (x[i].real() - scale.min) * scale.scale;
        const long q = std::clamp(std::lround(v), 0L, static_cast<long>(maxval));
        if (binary) {
            if (bytes_per == 2) out.put(static_cast<char>((q >> 8) & 0xff));
            out.put(static_cast<char>(q & 0xff));
        } else {
            out << q << ((i + 1) % x.cols() == 0 ? '\n' : ' ');
        }
    }
    if (!out) fail(path, "write failed");
    return scale;
}

void write_csv_matrix(const Signal& x, const std::filesystem::path& path) {
    if (!x.is_real()) throw std::invalid_argument("write_csv_matrix: real signals only");
    if (x.ndim() == 1) {
        write_signal_csv1d(x, path);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(path, "cannot open for writing");
    out << "# " << x.rows() << ' ' << x.cols() << '\n';
    for (std::size_t r = 0; r < x.rows(); ++r) {
        for (std::size_t c = 0; c < x.cols(); ++c) {
            if (c) out << ',';
            out << format_double(x[r * x.cols() + c].real());
        }
        out << '\n';
    }
    if (!out) fail(path, "write failed");
}

Signal read_csv_matrix(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(path, "cannot open for reading");
    std::string first;
    if (!std::getline(in, first)) fail(path, "empty file");

    std::size_t rows = 0, cols = 0;
    {
        std::istringstream hs(first);
        char hash = 0;
        if (!(hs >> hash) || hash != '#' || !(hs >> rows >> cols)) {
            // no shape header: plain one-sample-per-line CSV
            return read_csv1d(path);
        }
    }
    std::vector<double> vals;
    vals.reserve(rows * cols);
    std::string line;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view rest = trim(line);
        if (rest.empty()) continue;
        while (!rest.empty()) {
            const std::size_t comma = rest.find(',');
            const std::string_view tok = trim(rest.substr(0, comma));
            vals.push_back(parse_double(tok, path, lineno));
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
    }
    if (vals.size() != rows * cols)
        fail(path, "expected " + std::to_string(rows * cols) + " values, found " +
                       std::to_string(vals.size()));
    return Signal::real_2d(rows, cols, std::move(vals));
}

namespace {

double vertex_norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double c : v) s += c * c;
    return std::sqrt(s);
}

std::string fixed6(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 6);
    return std::string(buf, res.ptr);
}

}  // namespace

void write_spiral_csv(const SpiralPath& p, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(path, "cannot open for writing");
    const bool with_phi = !p.angles.empty();
    out << "l";
    if (p.dim <= 3) {
        const char* names[] = {"x", "y", "z"};
        for (std::size_t d = 0; d < p.dim; ++d) out << ',' << names[d];
    } else {
        for (std::size_t d = 0; d < p.dim; ++d) out << ",t" << (d + 1);
    }
    if (with_phi) out << ",phi";
    out << ",norm\n";
    for (std::size_t l = 0; l < p.vertices.size(); ++l) {
        out << l;
        for (double c : p.vertices[l]) out << ',' << format_double(c);
        if (with_phi) out << ',' << format_double(l == 0 ? 0.0 : p.angles[l - 1]);
        out << ',' << format_double(vertex_norm(p.vertices[l])) << '\n';
    }
    if (!out) fail(path, "write failed");
}

void write_spiral_svg(const SpiralPath& p, const std::filesystem::path& path) {
    double lo_x = 0.0, hi_x = 0.0, lo_y = 0.0, hi_y = 0.0;
    for (const auto& v : p.vertices) {
        lo_x = std::min(lo_x, v[0]);
        hi_x = std::max(hi_x, v[0]);
        lo_y = std::min(lo_y, -v[1]);  // svg y grows downward
        hi_y = std::max(hi_y, -v[1]);
    }
    const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1.0});
    const double margin = 0.05 * span;

    std::ofstream out(path, std::ios::binary);
    if (!out) fail(path, "cannot open for writing");
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\""
        << fixed6(lo_x - margin) << ' ' << fixed6(lo_y - margin) << ' '
        << fixed6(hi_x - lo_x + 2 * margin) << ' ' << fixed6(hi_y - lo_y + 2 * margin) << "\">\n";
    out << "  <metadata>dims=" << p.dim << " steps=" << p.step_count() << " projection="
        << (p.dim > 2 ? "orthographic-xy" : "none") << "</metadata>\n";
    out << "  <polyline fill=\"none\" stroke=\"#1f4e79\" stroke-width=\"" << fixed6(span / 400.0)
        << "\" points=\"";
    for (std::size_t l = 0; l < p.vertices.size(); ++l) {
        if (l) out << ' ';
        out << fixed6(p.vertices[l][0]) << ',' << fixed6(-p.vertices[l][1]);
    }
    out << "\"/>\n</svg>\n";
    if (!out) fail(path, "write failed");
}

}  // namespace fmd::io
