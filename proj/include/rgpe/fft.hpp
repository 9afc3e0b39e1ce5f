#pragma once
#include <memory>
#include "rgpe/field.hpp"

namespace rgpe {

// One-dimensional complex transforms along either grid axis of an n x n array.
// values(i, j) indexes (x1_i, x2_j) in column-major storage, so x1-transforms
// run over contiguous columns and x2-transforms go through a transpose.
// Inverse transforms carry the 1/n normalization.
class SpectralTransform {
public:
    explicit SpectralTransform(int n);

    void forward_x1(CArray& a);
    void inverse_x1(CArray& a);
    void forward_x2(CArray& a);
    void inverse_x2(CArray& a);

private:
    struct Impl;
    std::shared_ptr<Impl> impl_;
    int n_;

    void columns(CArray& a, bool inverse);
};

// Per-thread transform cache keyed by grid size.
SpectralTransform& transform_for(int n);

} // namespace rgpe
