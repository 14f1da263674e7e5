#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace smash {

// Finite symbol alphabet. Symbols are the integers 0..size-1; the textual
// encoding maps 0..9 to '0'..'9' and 10.. to 'a'.. (36 symbols max).
class Alphabet {
public:
    static constexpr int kMaxSize = 36;

    explicit Alphabet(int size) : size_(size) {
        if (size < 2)
            throw std::invalid_argument("alphabet size must be >= 2, got " +
                                        std::to_string(size));
        if (size > kMaxSize)
            throw std::invalid_argument("alphabet size must be <= 36, got " +
                                        std::to_string(size));
    }

    int size() const { return size_; }

    bool contains(int symbol) const { return symbol >= 0 && symbol < size_; }

    char to_char(int symbol) const {
        if (!contains(symbol))
            throw std::out_of_range("symbol " + std::to_string(symbol) +
                                    " outside alphabet of size " + std::to_string(size_));
        return symbol < 10 ? static_cast<char>('0' + symbol)
                           : static_cast<char>('a' + symbol - 10);
    }

    // Returns -1 for characters that do not encode a symbol of this alphabet.
    int from_char(char c) const {
        int v;
        if (c >= '0' && c <= '9') v = c - '0';
        else if (c >= 'a' && c <= 'z') v = c - 'a' + 10;
        else return -1;
        return v < size_ ? v : -1;
    }

    friend bool operator==(const Alphabet& a, const Alphabet& b) {
        return a.size_ == b.size_;
    }

private:
    int size_;
};

}  // namespace smash
