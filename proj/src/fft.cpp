#include "rgpe/fft.hpp"

#include <map>
#include <unsupported/Eigen/FFT>

namespace rgpe {

struct SpectralTransform::Impl {
    Eigen::FFT<double> fft;
    CArray scratch;
};

SpectralTransform::SpectralTransform(int n) : impl_(std::make_shared<Impl>()), n_(n) {
    impl_->scratch.resize(n, n);
}

void SpectralTransform::columns(CArray& a, bool inverse) {
    CArray& s = impl_->scratch;
    for (int j = 0; j < n_; ++j) {
        const Complex* src = a.data() + static_cast<std::ptrdiff_t>(j) * n_;
        Complex* dst = s.data() + static_cast<std::ptrdiff_t>(j) * n_;
        if (inverse)
            impl_->fft.inv(dst, src, n_);
        else
            impl_->fft.fwd(dst, src, n_);
    }
    a.swap(s);
}

void SpectralTransform::forward_x1(CArray& a) { columns(a, false); }
void SpectralTransform::inverse_x1(CArray& a) { columns(a, true); }

void SpectralTransform::forward_x2(CArray& a) {
    a = a.transpose().eval();
    columns(a, false);
    a = a.transpose().eval();
}

void SpectralTransform::inverse_x2(CArray& a) {
    a = a.transpose().eval();
    columns(a, true);
    a = a.transpose().eval();
}

SpectralTransform& transform_for(int n) {
    thread_local std::map<int, SpectralTransform> cache;
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, SpectralTransform(n)).first;
    return it->second;
}

} // namespace rgpe
