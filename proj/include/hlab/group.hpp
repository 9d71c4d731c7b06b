#pragma once

#include <vector>

namespace hlab {

// Point (y, eta, s) of the Heisenberg group H^d.
class GroupPoint {
public:
    GroupPoint() = default;
    GroupPoint(std::vector<double> y, std::vector<double> eta, double s);

    static GroupPoint identity(int d);
    // d = 1 shorthand
    static GroupPoint make1(double y, double eta, double s);

    int dim() const { return static_cast<int>(y_.size()); }
    const std::vector<double>& y() const { return y_; }
    const std::vector<double>& eta() const { return eta_; }
    double s() const { return s_; }

    // |Y|^2
    double rho() const;

private:
    std::vector<double> y_, eta_;
    double s_ = 0.0;
};

int homogeneous_dimension(int d);

GroupPoint product(const GroupPoint& w, const GroupPoint& w2);
GroupPoint inverse(const GroupPoint& w);
double koranyi_norm(const GroupPoint& w);
double distance(const GroupPoint& w, const GroupPoint& w2);
GroupPoint dilate(double a, const GroupPoint& w);
GroupPoint left_translate(const GroupPoint& w0, const GroupPoint& w);
bool in_ball(const GroupPoint& w, const GroupPoint& center, double R);

// Korányi gauge from (|Y|^2, s) without building a point.
double koranyi_gauge(double rho, double s);

}  // namespace hlab
