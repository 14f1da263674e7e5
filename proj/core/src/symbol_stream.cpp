#include "smash/symbol_stream.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace smash {

std::string SymbolStream::to_text() const {
    std::string out;
    out.reserve(symbols_.size());
    for (std::uint8_t s : symbols_) out.push_back(alphabet_.to_char(s));
    return out;
}

SymbolStream SymbolStream::from_text(const Alphabet& alphabet, const std::string& line) {
    SymbolStream s(alphabet);
    s.reserve(line.size());
    for (std::size_t i = 0; i < line.size(); ++i) {
        int v = alphabet.from_char(line[i]);
        if (v < 0)
            throw std::invalid_argument("invalid symbol character '" +
                                        std::string(1, line[i]) + "' at column " +
                                        std::to_string(i + 1));
        s.push_back(v);
    }
    return s;
}

std::vector<SymbolStream> read_streams(std::istream& in, const Alphabet& alphabet) {
    std::vector<SymbolStream> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        try {
            out.push_back(SymbolStream::from_text(alphabet, line));
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

std::vector<SymbolStream> read_stream_file(const std::string& path, const Alphabet& alphabet) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open stream file: " + path);
    return read_streams(in, alphabet);
}

void write_streams(std::ostream& out, const std::vector<SymbolStream>& streams) {
    for (const auto& s : streams) out << s.to_text() << '\n';
}

void write_stream_file(const std::string& path, const std::vector<SymbolStream>& streams) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    write_streams(out, streams);
}

std::vector<double> symbol_frequencies(const std::vector<SymbolStream>& streams) {
    if (streams.empty()) throw std::invalid_argument("no streams");
    const int k = streams.front().alphabet().size();
    std::vector<double> freq(k, 0.0);
    std::uint64_t total = 0;
    for (const auto& s : streams) {
        for (std::uint8_t sym : s.symbols()) freq[sym] += 1.0;
        total += s.size();
    }
    if (total > 0)
        for (double& f : freq) f /= static_cast<double>(total);
    return freq;
}

}  // namespace smash
