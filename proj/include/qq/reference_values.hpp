#pragma once

#include <array>
#include <utility>
#include <vector>

namespace qq::reference {

/// Size distributions printed to 4 decimals; row = size, one column per n.
struct SizeTable {
    std::vector<unsigned> ns;
    std::vector<std::vector<double>> rows;
};

inline const SizeTable& table1() {
    static const SizeTable t{
        {8, 27, 120},
        {
            {0.2588, 0.0971, 0.0145}, {0.5531, 0.3023, 0.0524}, {0.1719, 0.2931, 0.0788}, {0.0159, 0.1903, 0.1038},
            {0.0003, 0.0847, 0.1221}, {0, 0.0260, 0.1299},      {0, 0.0055, 0.1256},      {0, 0.0008, 0.1110},
            {0, 0.0001, 0.0897},      {0, 0, 0.0665},           {0, 0, 0.0453},           {0, 0, 0.0283},
            {0, 0, 0.0163},           {0, 0, 0.0086},           {0, 0, 0.0042},           {0, 0, 0.0019},
            {0, 0, 0.0008},           {0, 0, 0.0003},           {0, 0, 0.0001},           {0, 0, 0.0000},
        }};
    return t;
}

inline const SizeTable& table2() {
    static const SizeTable t{{10, 20, 30, 40, 50},
                             {
                                 {0.2199, 0.1272, 0.0878, 0.0654, 0.0508},
                                 {0.5230, 0.3738, 0.2780, 0.2154, 0.1718},
                                 {0.2199, 0.3023, 0.2842, 0.2488, 0.2140},
                                 {0.0353, 0.1457, 0.2013, 0.2149, 0.2089},
                                 {0.0019, 0.0426, 0.1011, 0.1422, 0.1635},
                                 {0.0000, 0.0075, 0.0363, 0.0728, 0.1038},
                                 {0, 0.0008, 0.0093, 0.0290, 0.0537},
                                 {0, 0.0000, 0.0017, 0.0090, 0.0227},
                                 {0, 0.0000, 0.0002, 0.0021, 0.0079},
                                 {0, 0.0000, 0.0000, 0.0004, 0.0022},
                                 {0, 0.0000, 0.0000, 0.0001, 0.0005},
                             }};
    return t;
}

/// Median size is m for prev < n <= bound, m = 0, 1, ...
inline constexpr std::array<unsigned, 9> kMedianBounds = {2, 20, 42, 67, 93, 120, 147, 174, 200};

inline unsigned expected_median(unsigned n) {
    unsigned m = 0;
    while (m < kMedianBounds.size() && n > kMedianBounds[m]) ++m;
    return m;
}

/// Leading eigenvalues for l = 1..20.
inline constexpr std::array<double, 20> kTable3 = {0.50000, 0.78785, 0.50000, 0.92693, 0.62500, 0.94912, 0.84548,
                                                   0.98454, 0.73649, 0.95848, 0.90142, 0.96793, 0.94705, 0.98797,
                                                   0.90546, 0.96437, 0.94949, 0.99048, 0.93382, 0.98042};

/// (l, leading) for every record l up to 300.
inline const std::vector<std::pair<unsigned, double>>& table4() {
    static const std::vector<std::pair<unsigned, double>> t = {
        {1, 0.50000},  {2, 0.78785},  {4, 0.92693},  {6, 0.94912},  {8, 0.98454},   {14, 0.98797},  {18, 0.99048},
        {32, 0.99243}, {45, 0.99324}, {56, 0.99335}, {72, 0.99362}, {248, 0.99367}, {258, 0.99381},
    };
    return t;
}

inline constexpr double kEmpiricalLeadingBound = 0.9940;

}  // namespace qq::reference
