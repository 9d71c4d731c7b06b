#include "hlab/group.hpp"

#include <cmath>

#include "hlab/error.hpp"

namespace hlab {

GroupPoint::GroupPoint(std::vector<double> y, std::vector<double> eta, double s)
    : y_(std::move(y)), eta_(std::move(eta)), s_(s) {
    require(!y_.empty(), ErrorCode::DimensionMismatch, "group point needs d >= 1");
    require(y_.size() == eta_.size(), ErrorCode::DimensionMismatch,
            "y and eta must have the same length");
    bool finite = std::isfinite(s_);
    for (std::size_t j = 0; j < y_.size(); ++j) finite = finite && std::isfinite(y_[j]) && std::isfinite(eta_[j]);
    require(finite, ErrorCode::InvalidArgument, "group point coordinates must be finite");
}

GroupPoint GroupPoint::identity(int d) {
    require(d >= 1, ErrorCode::InvalidArgument, "d must be >= 1");
    return GroupPoint(std::vector<double>(d, 0.0), std::vector<double>(d, 0.0), 0.0);
}

GroupPoint GroupPoint::make1(double y, double eta, double s) {
    return GroupPoint({y}, {eta}, s);
}

double GroupPoint::rho() const {
    double r = 0.0;
    for (std::size_t j = 0; j < y_.size(); ++j) r += y_[j] * y_[j] + eta_[j] * eta_[j];
    return r;
}

int homogeneous_dimension(int d) {
    require(d >= 1, ErrorCode::InvalidArgument, "d must be >= 1");
    return 2 * d + 2;
}

static void same_dim(const GroupPoint& a, const GroupPoint& b) {
    if (a.dim() != b.dim()) fail(ErrorCode::DimensionMismatch, "group points of different dimension");
}

GroupPoint product(const GroupPoint& w, const GroupPoint& w2) {
    same_dim(w, w2);
    const int d = w.dim();
    std::vector<double> y(d), eta(d);
    double s = w.s() + w2.s();
    for (int j = 0; j < d; ++j) {
        y[j] = w.y()[j] + w2.y()[j];
        eta[j] = w.eta()[j] + w2.eta()[j];
        s += 2.0 * (w.eta()[j] * w2.y()[j] - w2.eta()[j] * w.y()[j]);
    }
    return GroupPoint(std::move(y), std::move(eta), s);
}

GroupPoint inverse(const GroupPoint& w) {
    std::vector<double> y(w.y()), eta(w.eta());
    for (auto& v : y) v = -v;
    for (auto& v : eta) v = -v;
    return GroupPoint(std::move(y), std::move(eta), -w.s());
}

double koranyi_gauge(double rho, double s) {
    return std::sqrt(std::sqrt(rho * rho + s * s));
}

double koranyi_norm(const GroupPoint& w) {
    return koranyi_gauge(w.rho(), w.s());
}

double distance(const GroupPoint& w, const GroupPoint& w2) {
    return koranyi_norm(product(inverse(w), w2));
}

GroupPoint dilate(double a, const GroupPoint& w) {
    require(a > 0.0, ErrorCode::InvalidArgument, "dilation factor must be positive");
    std::vector<double> y(w.y()), eta(w.eta());
    for (auto& v : y) v *= a;
    for (auto& v : eta) v *= a;
    return GroupPoint(std::move(y), std::move(eta), a * a * w.s());
}

GroupPoint left_translate(const GroupPoint& w0, const GroupPoint& w) {
    return product(w0, w);
}

bool in_ball(const GroupPoint& w, const GroupPoint& center, double R) {
    require(R >= 0.0, ErrorCode::InvalidArgument, "ball radius must be nonnegative");
    return distance(w, center) < R;
}

}  // namespace hlab
