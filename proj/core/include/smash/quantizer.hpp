#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "smash/annihilation.hpp"
#include "smash/symbol_stream.hpp"

namespace smash {

// Finite reals only; readers reject NaN and infinities.
using NumericSeries = std::vector<double>;

enum class DiffMode { absolute, relative };

// Consecutive differences; relative mode divides by |previous value| and
// errors on a zero predecessor.
NumericSeries difference_series(const NumericSeries& v, DiffMode mode);

// Ordered cut points slicing the real line into |alphabet| left-open,
// right-closed cells.
struct Partition {
    Alphabet alphabet;
    std::vector<double> cuts;  // strictly increasing, size |alphabet|-1

    Partition(Alphabet a, std::vector<double> c);
};

// Cuts at the empirical i/k quantiles (type-1, lower order statistic) of the
// pooled corpus. Errors when cells would collapse.
Partition fit_max_entropy_partition(const std::vector<NumericSeries>& corpus, int k);

// Symbol = index of the cell containing the value; ties at a cut go low.
SymbolStream quantize(const NumericSeries& v, const Partition& p);

struct SchemeScore {
    double mean_self_error = 0.0;
    double mean_discrimination = 0.0;
    double ratio = 0.0;          // self / discrimination (inf when disc == 0)
    double min_symbol_freq = 0.0;
};

// Scores one quantization scheme on an already-quantized corpus via the
// annihilation circuit.
SchemeScore evaluate_scheme(const std::vector<SymbolStream>& corpus, double epsilon_star,
                            std::uint64_t seed);

struct AlphabetSelection {
    int chosen_size = 0;
    Partition partition;
    std::vector<std::pair<int, SchemeScore>> scores;  // per candidate size
};

// Fit, quantize and score each candidate size; pick the ratio-minimizing size
// among those whose rarest symbol stays above the frequency floor.
AlphabetSelection select_alphabet_size(const std::vector<NumericSeries>& corpus,
                                       const std::vector<int>& candidate_sizes,
                                       double epsilon_star, std::uint64_t seed,
                                       double frequency_floor = 0.01);

// Partition file: header "alphabet k", then one cut per line.
Partition read_partition(std::istream& in);
Partition read_partition_file(const std::string& path);
void write_partition(std::ostream& out, const Partition& p);
void write_partition_file(const std::string& path, const Partition& p);

// Numeric CSV: one series per line, or one single-column series per file.
std::vector<NumericSeries> read_numeric_csv(std::istream& in, bool column_mode);
std::vector<NumericSeries> read_numeric_csv_file(const std::string& path, bool column_mode);

}  // namespace smash
