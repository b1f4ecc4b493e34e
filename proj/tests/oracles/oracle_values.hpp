#pragma once

// Generated by generate_oracles.py (mpmath, 50 digits). Do not edit.

#include <array>
#include <complex>
#include <vector>

namespace hypermat::oracle {

using C = std::complex<double>;

struct GammaValue {
  C z;
  C value;
};

inline const std::vector<GammaValue> kGamma = {
    {{0.5, 0.0}, {1.7724538509055160273, 0.0}},
    {{0.0010000000000000000208, 0.0}, {999.4237724845954453, 0.0}},
    {{3.7000000000000001776, 0.0}, {4.1706517837966040301, 0.0}},
    {{10.5, 0.0}, {1133278.3889487855673, 0.0}},
    {{30.199999999999999289, 0.0}, {17410094445911311909000000000000.0, 0.0}},
    {{-2.5, 0.0}, {-0.94530872048294188123, 0.0}},
    {{0.10000000000000000555, 0.2000000000000000111}, {1.5391003433867946979, -3.8384919018379110316}},
    {{-0.5, 1.0}, {-0.46025215045076137657, -0.07056854203527512793}},
    {{2.0, 3.0}, {-0.082395272665611883674, 0.091774287435259314596}},
    {{1.0, 10.0}, {0.0000003918929270881377214, 0.0000011284479695846292885}},
    {{-3.2999999999999998224, -0.69999999999999995559}, {0.0011510424761154107656, -0.083538045489296269768}},
};

struct UnitTriple {
  C p, q, r;
  C value;  // 4F3 at 1 with the three-fold parameter split
};

inline const std::vector<UnitTriple> kUnit4F3 = {
    {{1.0, 0.0}, {1.0, 0.0}, {2.5, 0.0}, {1.519167753426424449, 0.0}},
    {{0.5, 0.0}, {1.1999999999999999556, 0.0}, {2.0, 0.0}, {1.8827809334064450301, 0.0}},
    {{-0.69999999999999995559, 0.0}, {0.80000000000000004441, 0.0}, {1.3000000000000000444, 0.0}, {0.65013407109635194728, 0.0}},
    {{0.25, 0.0}, {0.4000000000000000222, 0.0}, {1.1000000000000000888, 0.0}, {1.14434617084789118, 0.0}},
    {{0.2999999999999999889, 0.2000000000000000111}, {1.1000000000000000888, -0.10000000000000000555}, {2.2000000000000001776, 0.14999999999999999445}, {1.1895318163555052116, 0.051081758913120874931}},
    {{-0.4000000000000000222, -0.2999999999999999889}, {0.5999999999999999778, 0.2000000000000000111}, {1.5, -0.10000000000000000555}, {0.9499654594226062611, -0.13115124259780890288}},
    {{1.3000000000000000444, 0.0}, {0.9000000000000000222, 0.0}, {3.3999999999999999112, 0.0}, {1.1492524080054080544, 0.0}},
    {{0.80000000000000004441, 0.10000000000000000555}, {0.2999999999999999889, -0.050000000000000002776}, {1.3999999999999999112, 0.2000000000000000111}, {1.1788866194614826241, -0.17733755348722611084}},
    {{-0.2000000000000000111, 0.0}, {2.0, 0.0}, {2.6000000000000000888, 0.0}, {0.7822607892888980745, 0.0}},
    {{0.10000000000000000555, -0.25}, {1.6999999999999999556, 0.10000000000000000555}, {2.8999999999999999112, -0.2000000000000000111}, {1.0888290720762374086, -0.12424062553333752719}},
};

struct PfqValue {
  std::vector<C> num;
  std::vector<C> den;
  double z;
  C value;
};

inline const std::vector<PfqValue> kPfq = {
    {{{0.2999999999999999889, 0.0}, {0.69999999999999995559, 0.0}}, {{1.8999999999999999112, 0.0}}, 0.5999999999999999778, {1.089464800785896136, 0.0}},
    {{{1.0, 0.0}, {0.5, 0.0}}, {{1.5, 0.0}}, 0.25, {1.0986122886681096914, 0.0}},
    {{{0.4000000000000000222, 0.2999999999999999889}, {1.1999999999999999556, 0.0}}, {{2.1000000000000000888, -0.2000000000000000111}}, -0.9000000000000000222, {0.85510754731695555007, -0.11038159932937350939}},
    {{{0.5, 0.0}, {1.5, 0.0}, {0.25, 0.0}}, {{2.0, 0.0}, {3.1000000000000000888, 0.0}}, 1.0, {1.0396567074544595107, 0.0}},
    {{{0.80000000000000004441, 0.0}, {1.3000000000000000444, 0.0}}, {{0.9000000000000000222, 0.0}}, -1.0, {0.45213375649275392473, 0.0}},
    {{{1.1999999999999999556, 0.0}, {0.5999999999999999778, 0.0}, {0.9000000000000000222, 0.0}}, {{1.1000000000000000888, 0.0}, {0.69999999999999995559, 0.0}}, -0.96999999999999997335, {0.56887211986352475889, 0.0}},
    {{{-4.0, 0.0}, {0.5, 0.0}}, {{1.6999999999999999556, 0.0}}, 0.80000000000000004441, {0.49384177669534363322, 0.0}},
};

// 3F2(0.2, 0.15, 0.65; 1, 1.5; 1): unit-argument case P=0.2, Q=0.3, R=2.
inline constexpr double kUnit3F2 = 1.0191728435826168807;
// 4F3 at 1 with the three-fold split of P=0.2, Q=0.3, R=2.
inline constexpr double kUnit4F3Spot = 1.0107565667394458025;
// 4F3 at z = 0.5 with the three-fold split of P=0.5, Q=1, R=2.5.
inline constexpr double kThreeFoldHalf = 1.0467894791978957114;
// 2F1(0.3, 0.2; 2; 1).
inline constexpr double kGaussSum = 1.0471888966733322688;
inline constexpr double kEulerGamma = 0.57721566490153286061;
inline constexpr double kLn3 = 1.0986122886681096914;
inline constexpr double kTwoLn2 = 1.3862943611198906188;
inline constexpr double kQuarterPi = 0.78539816339744830962;
inline constexpr double kSqrt2Artanh = 1.2464504802804610268;
inline constexpr double kSqrtPi = 1.7724538509055160273;

}  // namespace hypermat::oracle
