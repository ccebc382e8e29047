/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#ifndef SPINLIGHT_H
#define SPINLIGHT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result code of every fallible call.
 */
typedef enum {
  SPINLIGHT_STATUS_OK = 0,
  /*
   A required pointer argument was null or a string was not UTF-8.
   */
  SPINLIGHT_STATUS_NULL_ARGUMENT = 1,
  /*
   Invalid input or configuration.
   */
  SPINLIGHT_STATUS_CONFIG = 2,
  /*
   Outside the physical domain of the model.
   */
  SPINLIGHT_STATUS_DOMAIN = 3,
  /*
   A numerical procedure failed.
   */
  SPINLIGHT_STATUS_NUMERICAL = 4,
  /*
   Internal error; the call was abandoned.
   */
  SPINLIGHT_STATUS_PANIC = 5,
} SpinlightStatus;

/*
 Named gravitating bodies.
 */
typedef struct SpinlightCatalog SpinlightCatalog;

/*
 Physical constants used by every computation.
 */
typedef struct SpinlightContext SpinlightContext;

/*
 Three-vector.
 */
typedef struct {
  double x;
  double y;
  double z;
} SpinlightVec3;

/*
 Constitutive tensors of a medium: `xi` row-major [s/m], gyration
 vector `G` [s/m] and inverse impedance `lambda = √(εε₀/(μμ₀))` [Ω⁻¹].
 */
typedef struct {
  double xi[9];
  SpinlightVec3 gyration;
  double lambda;
} SpinlightConstitutive;

/*
 Spinning gravitating body.
 */
typedef struct {
  double mass_kg;
  SpinlightVec3 angular_momentum_kg_m2_per_s;
  double radius_m;
} SpinlightSource;

/*
 Gravitoelectric and gravitomagnetic fields [m/s²].
 */
typedef struct {
  SpinlightVec3 e;
  SpinlightVec3 b;
} SpinlightGemFields;

/*
 Dominant frequency of a uniformly sampled complex signal.
 */
typedef struct {
  /*
   Angular frequency of the `e^{−iωt}` component [rad/s].
   */
  double omega;
  /*
   Width of one transform bin [rad/s].
   */
  double bin_width;
} SpinlightFrequency;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Last error message on this thread, or null. Valid until the next
 failing call on the same thread.
 */
const char *spinlight_last_error(void);

/*
 Library version as a static NUL-terminated string.
 */
const char *spinlight_version(void);

/*
 Context with CODATA 2018 constants. Never null.
 */
SpinlightContext *spinlight_context_new(void);

/*
 Context with constants overridden by a TOML string with keys
 `speed_of_light_m_per_s`, `vacuum_permeability_h_per_m`,
 `gravitational_constant_m3_per_kg_s2` and `reduced_planck_j_s`.

 # Safety
 `toml` must be a NUL-terminated string and `out` valid for writes.
 */
SpinlightStatus spinlight_context_from_toml(const char *toml, SpinlightContext **out);

/*
 Speed of light held by `ctx` [m/s], or NaN for a null context.

 # Safety
 `ctx` must be null or a live context.
 */
double spinlight_context_speed_of_light(const SpinlightContext *ctx);

/*
 # Safety
 `ctx` must be null or a context not yet freed.
 */
void spinlight_context_free(SpinlightContext *ctx);

/*
 `k± = n(ω ± Ω)/c` along the rotation axis [rad/m].

 # Safety
 `ctx` must be a live context and `out` valid for writes.
 */
SpinlightStatus spinlight_dispersion_axial(const SpinlightContext *ctx,
                                           double omega,
                                           double omega_z,
                                           double eps,
                                           double mu,
                                           int32_t helicity_sign,
                                           double *out);

/*
 Wavenumber recovered by minimizing the curl residual of the mode ansatz
 on a grid of `points` nodes per axis [rad/m].

 # Safety
 `ctx` must be a live context and `out` valid for writes.
 */
SpinlightStatus spinlight_dispersion_recover(const SpinlightContext *ctx,
                                             double omega,
                                             double omega_z,
                                             double eps,
                                             double mu,
                                             int32_t helicity_sign,
                                             size_t points,
                                             double *out);

/*
 Sagnac phase `4ω₀Ω·A/c²` [rad].

 # Safety
 `ctx` must be a live context and `out` valid for writes.
 */
SpinlightStatus spinlight_sagnac_phase(const SpinlightContext *ctx,
                                       double omega0,
                                       SpinlightVec3 rotation,
                                       SpinlightVec3 area,
                                       double *out);

/*
 Rotational Doppler frequency of a vacuum ray seen by an observer at
 `position` co-rotating at `rotation` [rad/s].

 # Safety
 `ctx` must be a live context and `out` valid for writes.
 */
SpinlightStatus spinlight_doppler_frequency(const SpinlightContext *ctx,
                                            double omega0,
                                            SpinlightVec3 direction,
                                            SpinlightVec3 position,
                                            SpinlightVec3 rotation,
                                            double *out);

/*
 Total photon energy including the spin-rotation term [J].

 # Safety
 `ctx` must be a live context and `out` valid for writes.
 */
SpinlightStatus spinlight_energy_total(const SpinlightContext *ctx,
                                       double omega0,
                                       SpinlightVec3 direction,
                                       SpinlightVec3 position,
                                       SpinlightVec3 rotation,
                                       int32_t helicity_sign,
                                       double *out);

/*
 `ω = ω₀ − (±k̂)·Ω` [rad/s].

 # Safety
 `out` must be valid for writes.
 */
SpinlightStatus spinlight_helicity_frequency(double omega0,
                                             SpinlightVec3 wave_vector,
                                             SpinlightVec3 rotation,
                                             int32_t helicity_sign,
                                             double *out);

/*
 Exact constitutive tensors of a medium `(ε, μ)` co-rotating at `Ω`
 about z, at the event `(t, x, y, z)`.

 # Safety
 `ctx` must be a live context and `out` valid for writes.
 */
SpinlightStatus spinlight_rotating_constitutive_exact(const SpinlightContext *ctx,
                                                      double omega_z,
                                                      double eps,
                                                      double mu,
                                                      double t,
                                                      SpinlightVec3 position,
                                                      SpinlightConstitutive *out);

/*
 Catalog shipped with the library. Never null.
 */
SpinlightCatalog *spinlight_catalog_builtin(void);

/*
 Loads a catalog TOML file with `[sources.<name>]` tables.

 # Safety
 `path` must be NUL-terminated and `out` valid for writes.
 */
SpinlightStatus spinlight_catalog_load(const char *path, SpinlightCatalog **out);

/*
 Looks up `name`; unknown names are a configuration error.

 # Safety
 `catalog` must be a live catalog, `name` NUL-terminated and `out` valid
 for writes.
 */
SpinlightStatus spinlight_catalog_get(const SpinlightCatalog *catalog,
                                      const char *name,
                                      SpinlightSource *out);

/*
 # Safety
 `catalog` must be null or a catalog not yet freed.
 */
void spinlight_catalog_free(SpinlightCatalog *catalog);

/*
 Exterior fields of `source` at `position`.

 # Safety
 `ctx` must be a live context, `source` readable and `out` valid for
 writes.
 */
SpinlightStatus spinlight_gem_fields(const SpinlightContext *ctx,
                                     const SpinlightSource *source,
                                     SpinlightVec3 position,
                                     SpinlightGemFields *out);

/*
 Closed-form gravitational Faraday rotation along the rotation axis from
 `z_i` to `z_f` [rad].

 # Safety
 `ctx` must be a live context, `source` readable and `out` valid for
 writes.
 */
SpinlightStatus spinlight_faraday_rotation_axial(const SpinlightContext *ctx,
                                                 const SpinlightSource *source,
                                                 double z_i,
                                                 double z_f,
                                                 double *out);

/*
 Faraday rotation by quadrature of the helicity wavenumber difference
 [rad].

 # Safety
 `ctx` must be a live context, `source` readable and `out` valid for
 writes.
 */
SpinlightStatus spinlight_faraday_rotation_numeric(const SpinlightContext *ctx,
                                                   const SpinlightSource *source,
                                                   double z_i,
                                                   double z_f,
                                                   double omega,
                                                   double *out);

/*
 Frequency of `count` samples stored as interleaved `(re, im)` pairs at
 spacing `dt`.

 # Safety
 `samples` must point to `2 * count` readable doubles and `out` be valid
 for writes.
 */
SpinlightStatus spinlight_measured_frequency(const double *samples,
                                             size_t count,
                                             double dt,
                                             SpinlightFrequency *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPINLIGHT_H */
