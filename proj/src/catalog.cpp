#include "sdq/catalog.hpp"

#include <algorithm>

namespace sdq::catalog {

namespace {

// clang-format off
constexpr Entry kEntries[] = {
    {"bicycle-36-4-6", Family::bicycle, 9, 1, 0, "1+x4", "x3+x6", 36, 4, 6, false, Parity::odd, true},
    {"bicycle-84-12-6", Family::bicycle, 21, 1, 0, "x2+x5", "x5+x14", 84, 12, 6, false, Parity::odd, true},
    {"bicycle-100-12-8", Family::bicycle, 25, 1, 0, "x10+x24", "x10+x16", 100, 12, 8, false, Parity::odd, true},
    {"bicycle-108-4-12", Family::bicycle, 27, 1, 0, "x22+x24", "x12+x22", 108, 4, 12, false, Parity::odd, true},
    {"bicycle-132-8-12", Family::bicycle, 33, 1, 0, "x10+x11", "x11+x31", 132, 8, 12, false, Parity::odd, true},
    {"bicycle-24-8-4", Family::bicycle, 6, 1, 0, "1+x2", "x3+x4", 24, 8, 4, false, Parity::even, true},
    {"bicycle-72-6-8", Family::bicycle, 18, 1, 0, "x2+x17", "x4+x5", 72, 6, 8, false, Parity::even, true},
    {"bicycle-80-8-8", Family::bicycle, 20, 1, 0, "1+x17", "x8+x17", 80, 8, 8, false, Parity::even, true},
    {"bicycle-88-4-10", Family::bicycle, 22, 1, 0, "x13+x18", "x1+x5", 88, 4, 10, false, Parity::even, true},
    {"bicycle-104-6-12", Family::bicycle, 26, 1, 0, "x6+x11", "x5+x14", 104, 6, 12, false, Parity::even, true},
    {"bb-60-12-5", Family::bb, 3, 5, 0, "x2y2+x2y", "x2y2+x2", 60, 12, 5, false, Parity::odd, true},
    {"bb-84-8-8", Family::bb, 3, 7, 0, "x2y+x", "x2y2+x", 84, 8, 8, false, Parity::odd, true},
    {"bb-100-12-8", Family::bb, 5, 5, 0, "xy+x4y", "y2+x4y3", 100, 12, 8, false, Parity::odd, true},
    {"bb-108-16-6", Family::bb, 9, 3, 0, "x2y6+x3y3", "x2y4+x4y", 108, 16, 6, false, Parity::odd, true},
    {"bb-140-16-8", Family::bb, 7, 5, 0, "y4+x2y2", "y2+x5y", 140, 16, 8, false, Parity::odd, true},
    {"bb-56-6-8", Family::bb, 7, 2, 0, "y4+xy3", "x5+x2y3", 56, 6, 8, false, Parity::even, true},
    {"bb-80-10-8", Family::bb, 5, 4, 0, "y2+y", "x2y+x4", 80, 10, 8, false, Parity::even, true},
    {"bb-112-8-12", Family::bb, 14, 2, 0, "x3y7+x11y4", "y2+x5y12", 112, 8, 12, false, Parity::even, true},
    {"bb-120-8-12", Family::bb, 6, 5, 0, "x4+x5y4", "x+x5y3", 120, 8, 12, false, Parity::even, true},
    {"bb-160-20-8", Family::bb, 4, 10, 0, "y3+x2y2", "x+x3y3", 160, 20, 8, false, Parity::even, true},
    {"twisted-bb-100-12-8", Family::twisted_bb, 5, 5, 3, "xy3+x3y3", "x2y2+x4y3", 100, 12, 8, false, Parity::odd, true},
    {"twisted-bb-132-8-12", Family::twisted_bb, 3, 11, 9, "1+x2y2", "y2+x1y", 132, 8, 12, false, Parity::odd, true},
    {"twisted-bb-140-16-8", Family::twisted_bb, 5, 7, 1, "x2y+y", "x2+x4y2", 140, 16, 8, false, Parity::odd, true},
    {"twisted-bb-180-20-8", Family::twisted_bb, 5, 9, 4, "y3+x", "x4y+xy2", 180, 20, 8, false, Parity::odd, true},
    {"twisted-bb-204-8-16", Family::twisted_bb, 17, 3, 2, "x2y5+x14y", "x11y16+x13y10", 204, 8, 16, false, Parity::odd, true},
    {"twisted-bb-112-8-12", Family::twisted_bb, 2, 14, 6, "y+xy", "1+y", 112, 8, 12, false, Parity::even, true},
    {"twisted-bb-128-16-8", Family::twisted_bb, 4, 8, 4, "xy+xy3", "x2y2+xy2", 128, 16, 8, false, Parity::even, true},
    {"twisted-bb-144-8-12", Family::twisted_bb, 2, 18, 10, "1+y", "y+xy", 144, 8, 12, false, Parity::even, true},
    {"twisted-bb-176-10-12", Family::twisted_bb, 11, 4, 1, "x5y2+x2y8", "x10y+y2", 176, 10, 12, false, Parity::even, true},
    {"twisted-bb-208-8-16", Family::twisted_bb, 26, 2, 1, "x10y21+x7y21", "x10y4+xy21", 208, 8, 16, false, Parity::even, true},
    {"reflection-68-4-10", Family::reflection, 17, 1, 0, "x8y5q+x9y12q", "x11y2+x15y16q", 68, 4, 10, false, Parity::odd, true},
    {"reflection-100-12-8", Family::reflection, 5, 5, 0, "x2py+x2py4", "xy2+x3y", 100, 12, 8, false, Parity::odd, true},
    {"reflection-120-8-10", Family::reflection, 10, 3, 0, "x2py4+xy9", "x7y4q+x3y7q", 120, 8, 10, false, Parity::odd, true},
    {"reflection-180-20-8", Family::reflection, 15, 3, 0, "x7y8+x2y12q", "x14y12q+x10y10", 180, 20, 8, false, Parity::odd, true},
    {"reflection-252-16-16", Family::reflection, 7, 9, 0, "x6y3q+x5y", "xy3+x6y6", 252, 16, 16, false, Parity::odd, true},
    {"reflection-64-16-8", Family::reflection, 4, 4, 0, "xyq+xpy3q", "xyq+x3py", 64, 16, 8, false, Parity::even, true},
    {"reflection-96-20-8", Family::reflection, 4, 6, 0, "x3py3+xy", "x2y2+x2y3", 96, 20, 8, false, Parity::even, true},
    {"reflection-120-14-10", Family::reflection, 15, 2, 0, "x11y14q+x7y14", "x10y6+x11y12q", 120, 14, 10, false, Parity::even, true},
    {"reflection-128-32-8", Family::reflection, 8, 4, 0, "x2py6+x6", "x2y5+x6yq", 128, 32, 8, false, Parity::even, true},
    {"reflection-144-16-12", Family::reflection, 18, 2, 0, "x11y6+x15y13q", "x3q+x13y10", 144, 16, 12, false, Parity::even, true},
    {"bicycle-116-4-14", Family::bicycle, 29, 1, 0, "1+x3", "x20+x25", 116, 4, 14, false, Parity::odd, false},
    {"bicycle-148-4-16", Family::bicycle, 37, 1, 0, "x21+x24", "x17+x22", 148, 4, 16, false, Parity::odd, false},
    {"bicycle-176-16-8", Family::bicycle, 44, 1, 0, "x11+x31", "1+x8", 176, 16, 8, false, Parity::odd, false},
    {"bicycle-204-4-18", Family::bicycle, 51, 1, 0, "1+x14", "x32+x40", 204, 4, 18, true, Parity::odd, false},
    {"bicycle-276-12-12", Family::bicycle, 69, 1, 0, "x27+x33", "x15+x54", 276, 12, 12, true, Parity::odd, false},
    {"bicycle-380-12-16", Family::bicycle, 95, 1, 0, "x2+x25", "x58+x75", 380, 12, 16, true, Parity::odd, false},
    {"bicycle-240-28-6", Family::bicycle, 60, 1, 0, "x41+x59", "x4+x26", 240, 28, 6, true, Parity::even, false},
    {"bicycle-248-4-20", Family::bicycle, 62, 1, 0, "x7+x26", "x32+x34", 248, 4, 20, true, Parity::even, false},
    {"bicycle-264-8-16", Family::bicycle, 66, 1, 0, "x4+x18", "x42+x53", 264, 8, 16, true, Parity::even, false},
    {"bicycle-280-4-22", Family::bicycle, 70, 1, 0, "x25+x51", "x21+x64", 280, 4, 22, true, Parity::even, false},
    {"bicycle-296-6-18", Family::bicycle, 74, 1, 0, "x6+x65", "x8+x25", 296, 6, 18, true, Parity::even, false},
    {"bicycle-312-6-20", Family::bicycle, 78, 1, 0, "x14+x73", "x2+x71", 312, 6, 20, true, Parity::even, false},
    {"bicycle-360-4-24", Family::bicycle, 90, 1, 0, "x22+x24", "x+x52", 360, 4, 24, true, Parity::even, false},
    {"bb-156-12-10", Family::bb, 13, 3, 0, "y6+x10y12", "x10y11+x8y8", 156, 12, 10, false, Parity::odd, false},
    {"bb-204-8-16", Family::bb, 17, 3, 0, "x+x6y10", "x2y12+x6y11", 204, 8, 16, true, Parity::odd, false},
    {"bb-228-4-20", Family::bb, 19, 3, 0, "x17y13+x11y13", "x13+x18y", 228, 4, 20, true, Parity::odd, false},
    // Listed with A = x4y2 + x41, which reduces to x4y2 + x and gives k = 4; x4 gives the listed k = 20.
    {"bb-260-20-10", Family::bb, 5, 13, 0, "x4y2+x4", "x2+x2y3", 260, 20, 10, true, Parity::odd, false},
    {"bb-276-4-22", Family::bb, 23, 3, 0, "x20y19+x16y12", "x17y18+x8y9", 276, 4, 22, true, Parity::odd, false},
    {"bb-280-32-8", Family::bb, 7, 10, 0, "xy5+x4y3", "x3y3+x6y3", 280, 32, 8, true, Parity::odd, false},
    {"bb-364-28-10", Family::bb, 7, 13, 0, "y5+y4", "xy+xy6", 364, 28, 10, true, Parity::odd, false},
    {"bb-24-8-4", Family::bb, 3, 2, 0, "xy2+x2", "x2y+xy2", 24, 8, 4, false, Parity::even, false},
    {"bb-32-12-4", Family::bb, 2, 4, 0, "xy+x", "x+y", 32, 12, 4, false, Parity::even, false},
    {"bb-64-24-4", Family::bb, 4, 4, 0, "x3y3+x", "xy2+xy3", 64, 24, 4, false, Parity::even, false},
    {"bb-88-4-12", Family::bb, 11, 2, 0, "y7+xy", "x9y4+x7y7", 88, 4, 12, false, Parity::even, false},
    {"bb-104-6-12", Family::bb, 13, 2, 0, "x2y8+x9y", "x7y+x6y8", 104, 6, 12, false, Parity::even, false},
    {"bb-128-16-8", Family::bb, 16, 2, 0, "x7y9+x8y9", "x5y9+x2y11", 128, 16, 8, false, Parity::even, false},
    {"bb-168-6-16", Family::bb, 6, 7, 0, "y4+x3y", "y5+x5", 168, 6, 16, false, Parity::even, false},
    {"bb-192-24-8", Family::bb, 12, 4, 0, "x2y3+x7y9", "x2y10+x11y2", 192, 24, 8, false, Parity::even, false},
    {"bb-208-12-12", Family::bb, 26, 2, 0, "x21y9+x24y17", "x20y4+xy4", 208, 12, 12, true, Parity::even, false},
    {"bb-216-16-10", Family::bb, 6, 9, 0, "x2+x2y5", "y3+x3y2", 216, 16, 10, true, Parity::even, false},
    {"bb-224-16-12", Family::bb, 4, 14, 0, "x3y3+xy", "x3y+x11", 224, 16, 12, true, Parity::even, false},
    {"bb-248-6-20", Family::bb, 31, 2, 0, "x29y25+x3y22", "x29y28+x22y11", 248, 6, 20, true, Parity::even, false},
    {"bb-272-8-20", Family::bb, 17, 4, 0, "x9y11+x10y8", "x31+xy11", 272, 8, 20, true, Parity::even, false},
    {"bb-288-12-16", Family::bb, 9, 8, 0, "x7y8+x4y3", "x8y2+x7y7", 288, 12, 16, true, Parity::even, false},
    {"bb-320-16-16", Family::bb, 10, 8, 0, "x7y8+x9y9", "x5y6+y", 320, 16, 16, true, Parity::even, false},
    {"bb-384-48-8", Family::bb, 12, 8, 0, "xy4+xy10", "x5y11+x8y8", 384, 48, 8, true, Parity::even, false},
    {"twisted-bb-60-12-5", Family::twisted_bb, 3, 5, 4, "x2+x2y", "1+y2", 60, 12, 5, false, Parity::odd, false},
    {"twisted-bb-84-8-8", Family::twisted_bb, 3, 7, 4, "1+xy2", "y2+x2y2", 84, 8, 8, false, Parity::odd, false},
    {"twisted-bb-220-12-12", Family::twisted_bb, 11, 5, 2, "x9y9+x2y2", "x7+x9y5", 220, 12, 12, true, Parity::odd, false},
    {"twisted-bb-228-8-16", Family::twisted_bb, 3, 19, 1, "y2+x", "1+x2y2", 228, 8, 16, true, Parity::odd, false},
    {"twisted-bb-252-4-20", Family::twisted_bb, 7, 9, 4, "x2y4+x2", "x3y+x6y4", 252, 4, 20, true, Parity::odd, false},
    {"twisted-bb-260-4-21", Family::twisted_bb, 5, 13, 10, "x4y+x2y4", "x4+1", 260, 4, 21, true, Parity::odd, false},
    {"twisted-bb-324-8-20", Family::twisted_bb, 3, 27, 9, "x2y+y2", "xy2+x2y2", 324, 8, 20, true, Parity::odd, false},
    {"twisted-bb-340-4-22", Family::twisted_bb, 5, 17, 14, "y4+y3", "x4+x3y", 340, 4, 22, true, Parity::odd, false},
    {"twisted-bb-372-8-18", Family::twisted_bb, 3, 31, 16, "xy2+y2", "x2y2+y", 372, 8, 18, true, Parity::odd, false},
    {"twisted-bb-24-8-4", Family::twisted_bb, 3, 2, 1, "y2+x2y", "y+x", 24, 8, 4, false, Parity::even, false},
    {"twisted-bb-32-12-4", Family::twisted_bb, 2, 4, 1, "xy+1", "x+1", 32, 12, 4, false, Parity::even, false},
    {"twisted-bb-48-16-4", Family::twisted_bb, 2, 6, 2, "y+xy", "xy+x", 48, 16, 4, false, Parity::even, false},
    {"twisted-bb-56-6-8", Family::twisted_bb, 7, 2, 1, "xy5+x6y3", "x4y4+x5y4", 56, 6, 8, false, Parity::even, false},
    {"twisted-bb-64-8-8", Family::twisted_bb, 2, 8, 5, "y+x", "xy+1", 64, 8, 8, false, Parity::even, false},
    {"twisted-bb-72-4-10", Family::twisted_bb, 3, 6, 2, "xy+x2", "y2+x2y2", 72, 4, 10, false, Parity::even, false},
    {"twisted-bb-80-10-8", Family::twisted_bb, 10, 2, 1, "x9y3+y8", "x5+x2y9", 80, 10, 8, false, Parity::even, false},
    {"twisted-bb-104-6-12", Family::twisted_bb, 2, 13, 6, "xy+1", "x+y", 104, 6, 12, false, Parity::even, false},
    {"twisted-bb-120-8-12", Family::twisted_bb, 3, 10, 7, "x2+x", "x2y+xy2", 120, 8, 12, false, Parity::even, false},
    {"twisted-bb-136-6-12", Family::twisted_bb, 2, 17, 12, "x+y", "x+1", 136, 6, 12, false, Parity::even, false},
    {"twisted-bb-160-20-8", Family::twisted_bb, 4, 10, 1, "x2y+y2", "x2y2+1", 160, 20, 8, false, Parity::even, false},
    {"twisted-bb-216-12-12", Family::twisted_bb, 6, 9, 3, "x5y3+x5y4", "y3+x5y2", 216, 12, 12, true, Parity::even, false},
    {"twisted-bb-224-16-12", Family::twisted_bb, 4, 14, 2, "x3y2+xy", "x3y3+x3", 224, 16, 12, true, Parity::even, false},
    {"twisted-bb-240-16-12", Family::twisted_bb, 6, 10, 2, "y3+x5y", "x4y2+y5", 240, 16, 12, true, Parity::even, false},
    {"twisted-bb-288-12-16", Family::twisted_bb, 8, 9, 1, "x5y4+y3", "x5y2+x2y5", 288, 12, 16, true, Parity::even, false},
    {"twisted-bb-384-8-20", Family::twisted_bb, 3, 32, 6, "y+xy2", "x2y+xy2", 384, 8, 20, true, Parity::even, false},
    {"reflection-28-4-5", Family::reflection, 7, 1, 0, "x2y2+x5y6q", "x3y3q+xy6q", 28, 4, 5, false, Parity::odd, false},
    {"reflection-36-12-4", Family::reflection, 3, 3, 0, "pyq+x", "pq+xy2q", 36, 12, 4, false, Parity::odd, false},
    {"reflection-44-4-7", Family::reflection, 11, 1, 0, "x9y8+x2y3q", "xy2+x7y2", 44, 4, 7, false, Parity::odd, false},
    {"reflection-60-12-5", Family::reflection, 15, 1, 0, "y2+x6y10", "x10y9q+x7y7", 60, 12, 5, false, Parity::odd, false},
    {"reflection-132-4-18", Family::reflection, 11, 3, 0, "x7y2+x6", "x10y10q+x7yq", 132, 4, 18, false, Parity::odd, false},
    {"reflection-260-4-26", Family::reflection, 13, 5, 0, "x12y7+x7y3", "x10y2q+x11y9q", 260, 4, 26, true, Parity::odd, false},
    {"reflection-300-4-28", Family::reflection, 25, 3, 0, "x3y5+x24y4", "x14y6+x19y2q", 300, 4, 28, true, Parity::odd, false},
    {"reflection-324-4-28", Family::reflection, 27, 3, 0, "x2y4+x6y17", "x22y17q+x16y14q", 324, 4, 28, true, Parity::odd, false},
    {"reflection-348-4-35", Family::reflection, 29, 3, 0, "x21y5+x24y10q", "x27y19q+x22y20", 348, 4, 35, true, Parity::odd, false},
    {"reflection-380-4-58", Family::reflection, 5, 19, 0, "x4y3+x3py4", "xy+x4y3", 380, 4, 58, true, Parity::odd, false},
    {"reflection-24-8-4", Family::reflection, 3, 2, 0, "y2q+xyq", "x2y+q", 24, 8, 4, false, Parity::even, false},
    {"reflection-32-18-4", Family::reflection, 4, 2, 0, "x3y3+xpy3q", "x3py3+x3", 32, 18, 4, false, Parity::even, false},
    {"reflection-112-8-14", Family::reflection, 14, 2, 0, "x5y3+x6q", "x10y12q+x5y5q", 112, 8, 14, false, Parity::even, false},
    {"reflection-160-8-16", Family::reflection, 10, 4, 0, "x2y8+x6y", "x7y3q+y5q", 160, 8, 16, false, Parity::even, false},
    {"reflection-200-4-20", Family::reflection, 25, 2, 0, "x15y2q+x2y15q", "x4y22q+x13y4q", 200, 4, 20, true, Parity::even, false},
    {"reflection-256-8-20", Family::reflection, 32, 2, 0, "x28y6+x9y22q", "x13y26q+x15y6q", 256, 8, 20, true, Parity::even, false},
    {"reflection-312-6-30", Family::reflection, 13, 6, 0, "x11y7q+y5", "xy5+x5y7q", 312, 6, 30, true, Parity::even, false},
    {"reflection-384-24-16", Family::reflection, 24, 4, 0, "x16y8+x5y2", "x13y11q+x10y11", 384, 24, 16, true, Parity::even, false},
};
// clang-format on

}  // namespace

std::span<const Entry> entries() noexcept { return kEntries; }

const Entry* find(std::string_view id) noexcept {
  const auto it = std::ranges::find(kEntries, id, &Entry::id);
  return it == std::end(kEntries) ? nullptr : &*it;
}

CodeSpec to_spec(const Entry& e) {
  CodeSpec spec;
  spec.family = e.family;
  spec.lattice = LatticeSpec{e.l, e.m, e.gamma, e.family == Family::reflection};
  spec.a = parse_poly(e.a, spec.lattice);
  spec.b = parse_poly(e.b, spec.lattice);
  spec.name = std::string(e.id);
  spec.validate();
  return spec;
}

}  // namespace sdq::catalog
