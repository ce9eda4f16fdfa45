#pragma once

// Frozen reference values computed with mpmath at 40 digits.

namespace wquant::testing {

struct ErfRef {
    double x;
    double erf;
    double erfc;
};

inline constexpr ErfRef kErfReference[] = {
    {-3.5, -0.99999925690162765859, 1.9999992569016276586},
    {-2, -0.99532226501895273416, 1.9953222650189527342},
    {-1.25, -0.92290012825645823014, 1.9229001282564582301},
    {-0.75, -0.7111556336535151316, 1.7111556336535151316},
    {-0.3, -0.32862675945912742764, 1.3286267594591274276},
    {-1e-3, -0.0011283787909692363799, 1.0011283787909692364},
    {0, 0.0, 1.0},
    {1e-8, 1.1283791670955125363e-8, 0.99999998871620832904},
    {0.1, 0.1124629160182848922, 0.8875370839817151078},
    {0.25, 0.27632639016823693299, 0.72367360983176306701},
    {0.5, 0.52049987781304653768, 0.47950012218695346232},
    {0.8, 0.74210096470766048617, 0.25789903529233951383},
    {1, 0.84270079294971486934, 0.15729920705028513066},
    {1.5, 0.96610514647531072707, 0.033894853524689272933},
    {2, 0.99532226501895273416, 0.0046777349810472658379},
    {2.5, 0.99959304798255504106, 0.00040695201744495893956},
    {3, 0.99997790950300141456, 0.000022090496998585441373},
    {4, 0.99999998458274209972, 1.5417257900280018852e-8},
    {5, 0.99999999999846254021, 1.5374597944280348502e-12},
    {6, 0.99999999999999997848, 2.1519736712498913117e-17},
};

}  // namespace wquant::testing
