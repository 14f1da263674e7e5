#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "smash/alphabet.hpp"

namespace smash {

// A finite sequence of symbols over a fixed alphabet.
class SymbolStream {
public:
    explicit SymbolStream(Alphabet alphabet) : alphabet_(alphabet) {}

    SymbolStream(Alphabet alphabet, std::vector<std::uint8_t> symbols)
        : alphabet_(alphabet), symbols_(std::move(symbols)) {
        for (std::uint8_t s : symbols_)
            if (!alphabet_.contains(s))
                throw std::invalid_argument("symbol " + std::to_string(int(s)) +
                                            " outside alphabet");
    }

    const Alphabet& alphabet() const { return alphabet_; }
    std::size_t size() const { return symbols_.size(); }
    bool empty() const { return symbols_.empty(); }
    std::uint8_t operator[](std::size_t i) const { return symbols_[i]; }
    std::span<const std::uint8_t> symbols() const& { return symbols_; }
    // A span into a temporary would dangle; force callers to name the stream.
    std::span<const std::uint8_t> symbols() const&& = delete;

    void push_back(int symbol) {
        if (!alphabet_.contains(symbol))
            throw std::invalid_argument("symbol outside alphabet");
        symbols_.push_back(static_cast<std::uint8_t>(symbol));
    }

    void reserve(std::size_t n) { symbols_.reserve(n); }

    std::string to_text() const;
    static SymbolStream from_text(const Alphabet& alphabet, const std::string& line);

    friend bool operator==(const SymbolStream& a, const SymbolStream& b) {
        return a.alphabet_ == b.alphabet_ && a.symbols_ == b.symbols_;
    }

private:
    Alphabet alphabet_;
    std::vector<std::uint8_t> symbols_;
};

// Stream file format: one stream per line, one character per symbol,
// '#'-prefixed lines are comments, blank lines ignored.
std::vector<SymbolStream> read_streams(std::istream& in, const Alphabet& alphabet);
std::vector<SymbolStream> read_stream_file(const std::string& path, const Alphabet& alphabet);
void write_streams(std::ostream& out, const std::vector<SymbolStream>& streams);
void write_stream_file(const std::string& path, const std::vector<SymbolStream>& streams);

// Pooled per-symbol frequencies across a set of streams.
std::vector<double> symbol_frequencies(const std::vector<SymbolStream>& streams);

}  // namespace smash
