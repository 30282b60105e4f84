#include "cm/hermite.hpp"

#include <cassert>
#include <cstring>

namespace cm {

namespace {

// 1D Hermite basis rows at local coordinate s for a cell of width h.
// row[o][b*2 + q] = d^o/dx^o of the basis function attached to corner b
// (0 = left, 1 = right) and data kind q (0 = value, 1 = derivative), with the
// derivative basis carrying its h scaling so stored derivatives stay in
// domain units.
void basis_rows(double s, double h, int max_order, double row[4][4]) {
  const double s2 = s * s;
  const double s3 = s2 * s;
  row[0][0] = 1.0 - 3.0 * s2 + 2.0 * s3;        // h00
  row[0][1] = h * (s - 2.0 * s2 + s3);          // h10
  row[0][2] = 3.0 * s2 - 2.0 * s3;              // h01
  row[0][3] = h * (s3 - s2);                    // h11
  if (max_order < 1) return;
  const double ih = 1.0 / h;
  row[1][0] = (6.0 * s2 - 6.0 * s) * ih;
  row[1][1] = 1.0 - 4.0 * s + 3.0 * s2;
  row[1][2] = (6.0 * s - 6.0 * s2) * ih;
  row[1][3] = 3.0 * s2 - 2.0 * s;
  if (max_order < 2) return;
  const double ih2 = ih * ih;
  row[2][0] = (12.0 * s - 6.0) * ih2;
  row[2][1] = (6.0 * s - 4.0) * ih;
  row[2][2] = (6.0 - 12.0 * s) * ih2;
  row[2][3] = (6.0 * s - 2.0) * ih;
  if (max_order < 3) return;
  const double ih3 = ih2 * ih;
  row[3][0] = 12.0 * ih3;
  row[3][1] = 6.0 * ih2;
  row[3][2] = -12.0 * ih3;
  row[3][3] = 6.0 * ih2;
}

}  // namespace

HermiteField::HermiteField(const GridGeometry& geom, int components)
    : geom_(geom), ncomp_(components) {
  if (components < 1 || components > 3)
    throw std::invalid_argument("field components must be in [1, 3]");
  data_.assign(geom_.node_count() * node_stride(), 0.0);
}

void HermiteField::eval_orders(const Vec& x, int orders, double* out) const {
  const int d = geom_.dims();
  const int nm = 1 << d;  // corners and masks per cell
  const CellLoc loc = geom_.locate(x);
  long corners[8];
  geom_.corner_nodes(loc, corners);

  double rows[3][4][4];
  for (int j = 0; j < d; ++j)
    basis_rows(loc.s[j], geom_.dx(), orders - 1, rows[j]);

  // Gather the cell tensor indexed [bq_0][bq_1][bq_2][comp], axis 0 major,
  // where bq = corner_bit*2 + deriv_bit.
  double buf_a[192];
  double buf_b[192];
  const int bq_stride[3] = {d == 3 ? 16 : 4, d == 3 ? 4 : 1, 1};
  for (int corner = 0; corner < nm; ++corner) {
    const double* nd = node_data(corners[corner]);
    for (int m = 0; m < nm; ++m) {
      int flat = 0;
      for (int j = 0; j < d; ++j) {
        const int bq = ((corner >> j) & 1) * 2 + ((m >> j) & 1);
        flat += bq * bq_stride[j];
      }
      for (int k = 0; k < ncomp_; ++k)
        buf_a[flat * ncomp_ + k] = nd[k * nm + m];
    }
  }

  // Contract one axis at a time: out[o][rest] = sum_bq row[o][bq] * in[bq][rest].
  double* cur = buf_a;
  double* nxt = buf_b;
  int outer = 1;                  // product of order dims already emitted
  int inner = (1 << (2 * d)) * ncomp_;  // 4^d entries times ncomp
  for (int j = 0; j < d; ++j) {
    inner /= 4;
    const int in_stride = 4 * inner;
    const int out_stride = orders * inner;
    for (int u = 0; u < outer; ++u) {
      const double* in_block = cur + u * in_stride;
      double* out_block = nxt + u * out_stride;
      for (int o = 0; o < orders; ++o) {
        const double* r = rows[j][o];
        double* dst = out_block + o * inner;
        for (int v = 0; v < inner; ++v) {
          dst[v] = r[0] * in_block[v] + r[1] * in_block[inner + v] +
                   r[2] * in_block[2 * inner + v] + r[3] * in_block[3 * inner + v];
        }
      }
    }
    outer *= orders;
    std::swap(cur, nxt);
  }

  // cur now holds [o0][o1][o2][comp] with axis 0 major; transpose to
  // out[k][o0 + orders*o1 + ...] (axis 0 fastest in the flat order index).
  const int total = outer;  // orders^d
  for (int u = 0; u < total; ++u) {
    int rem = u;
    int of = 0;
    int mul = 1;
    // u is built axis-0-major; decompose and rebuild axis-0-fastest.
    int digits[3] = {0, 0, 0};
    for (int j = d - 1; j >= 0; --j) {
      digits[j] = rem % orders;
      rem /= orders;
    }
    for (int j = 0; j < d; ++j) {
      of += digits[j] * mul;
      mul *= orders;
    }
    for (int k = 0; k < ncomp_; ++k) out[k * total + of] = cur[u * ncomp_ + k];
  }
}

void HermiteField::eval(const Vec& x, double* out) const {
  double tmp[3];
  eval_orders(x, 1, tmp);
  for (int k = 0; k < ncomp_; ++k) out[k] = tmp[k];
}

double HermiteField::eval1(const Vec& x) const {
  double v[3];
  eval(x, v);
  return v[0];
}

void HermiteField::eval_with_gradient(const Vec& x, double* val,
                                      double* jac) const {
  const int d = geom_.dims();
  double jet[3 * 8];
  eval_orders(x, 2, jet);
  const int total = 1 << d;  // 2^d order combinations
  for (int k = 0; k < ncomp_; ++k) {
    val[k] = jet[k * total + 0];
    for (int j = 0; j < d; ++j) jac[k * d + j] = jet[k * total + (1 << j)];
  }
}

void HermiteField::eval_jet(const Vec& x, double* out) const {
  // With two orders per axis the order-combination index coincides with the
  // derivative bitmask, so this is the jet in storage order.
  eval_orders(x, 2, out);
}

void HermiteField::eval_lattice(const Vec& x, double* out) const {
  eval_orders(x, 4, out);
}

HermiteField fill_from_jet(const GridGeometry& geom, int components,
                           const JetFn& jet) {
  HermiteField f(geom, components);
  const long n = geom.node_count();
  for (long i = 0; i < n; ++i) {
    jet(geom.node_point(i), f.node_data(i));
  }
  return f;
}

HermiteField fill_from_values(const GridGeometry& geom, int components,
                              const ValueFn& value) {
  HermiteField f(geom, components);
  const int d = geom.dims();
  const int nm = 1 << d;
  const double h = 1e-4 * geom.dx();
  const long n = geom.node_count();
  std::vector<double> tmp(components);
  auto at = [&](Vec p, int k) {
    value(p, tmp.data());
    return tmp[k];
  };
  for (long i = 0; i < n; ++i) {
    const Vec p = geom.node_point(i);
    double* nd = f.node_data(i);
    value(p, tmp.data());
    for (int k = 0; k < components; ++k) nd[k * nm + 0] = tmp[k];
    for (int k = 0; k < components; ++k) {
      // First partials: axis-aligned central differences.
      for (int j = 0; j < d; ++j) {
        Vec a = p, b = p;
        a[j] += h;
        b[j] -= h;
        nd[k * nm + (1 << j)] = (at(a, k) - at(b, k)) / (2.0 * h);
      }
      // Mixed partials: alternating-sign corner stencils.
      for (int m = 3; m < nm; ++m) {
        const int bits = __builtin_popcount(static_cast<unsigned>(m));
        if (bits < 2) continue;
        double acc = 0.0;
        for (int c = 0; c < nm; ++c) {
          if ((c & ~m) != 0) continue;
          double sign = 1.0;
          Vec q = p;
          for (int j = 0; j < d; ++j) {
            if (!((m >> j) & 1)) continue;
            if ((c >> j) & 1) {
              q[j] += h;
            } else {
              q[j] -= h;
              sign = -sign;
            }
          }
          acc += sign * at(q, k);
        }
        nd[k * nm + m] = acc / std::pow(2.0 * h, bits);
      }
    }
  }
  return f;
}

HermiteField resample(const HermiteField& src, const GridGeometry& target) {
  if (!src.geometry().same_box(target))
    throw std::invalid_argument("resample requires matching box and boundary");
  HermiteField out(target, src.components());
  const long n = target.node_count();
  for (long i = 0; i < n; ++i) {
    src.eval_jet(target.node_point(i), out.node_data(i));
  }
  return out;
}

}  // namespace cm
