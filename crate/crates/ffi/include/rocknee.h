/* C interface for the rocknee threshold-analysis toolkit. */

#ifndef ROCKNEE_H
#define ROCKNEE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call in this interface.
 */
typedef enum RkStatus {
  /**
   * The call succeeded and all output parameters are valid.
   */
  RK_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  RK_STATUS_NULL_ARGUMENT = 1,
  /**
   * An argument or parsed payload was malformed.
   */
  RK_STATUS_INVALID_INPUT = 2,
  /**
   * The data was well-formed but too small for the computation.
   */
  RK_STATUS_INSUFFICIENT_DATA = 3,
  /**
   * An internal invariant failed; the handle state is unchanged.
   */
  RK_STATUS_INTERNAL = 4,
  /**
   * The provided buffer cannot hold the result; the required size was
   * written to the length out-parameter.
   */
  RK_STATUS_BUFFER_TOO_SMALL = 5,
} RkStatus;

/**
 * Owned multi-class probability dataset.
 */
typedef struct RkDataset RkDataset;

/**
 * Owned ROC curve: sampled points plus the trapezoid AUC.
 */
typedef struct RkRocCurve RkRocCurve;

/**
 * Owned score collection split into positives and negatives.
 */
typedef struct RkScoreSet RkScoreSet;

/**
 * Owned result of a redistribution sweep: derived curves and one record
 * per iteration.
 */
typedef struct RkSweep RkSweep;

/**
 * One redistribution iteration: the snapped threshold, holder sizes, and
 * the index of the derived curve when one was produced (`has_curve != 0`).
 */
typedef struct RkIteration {
  double threshold;
  uint8_t skipped;
  uint8_t has_curve;
  uint64_t curve_index;
  uint64_t true_positive_count;
  uint64_t false_negative_count;
  uint64_t false_positive_count;
  uint64_t true_negative_count;
} RkIteration;

/**
 * Knee location on a sampled curve. `found == 0` means the detector ran
 * successfully but no point qualified; the remaining fields are zero.
 */
typedef struct RkKneePoint {
  uint8_t found;
  uint64_t index;
  double x;
  double y;
} RkKneePoint;

/**
 * Knee-to-diagonal geometry: perpendicular foot, signed distance, and the
 * maximum threshold `0.5 + distance` clamped to `[0, 1]`.
 */
typedef struct RkThreshold {
  double foot_x;
  double foot_y;
  double distance;
  double threshold;
} RkThreshold;

/**
 * Aggregate knee statistics over a dataset. `in_range_fraction` is only
 * meaningful when `has_in_range_fraction != 0` (it requires at least one
 * sample above the probability cutoff).
 */
typedef struct RkKneeStats {
  uint64_t total;
  uint64_t high_count;
  double high_fraction;
  uint64_t in_range_count;
  uint8_t has_in_range_fraction;
  double in_range_fraction;
  uint64_t no_knee_count;
} RkKneeStats;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Version of the library as a static NUL-terminated string.
 */
const char *rk_version(void);

/**
 * Message describing the most recent failure on the calling thread, or
 * null if none occurred. The pointer stays valid until the next failing
 * call on the same thread.
 */
const char *rk_last_error(void);

/**
 * Error function approximation (Abramowitz & Stegun 7.1.26, max absolute
 * error 1.5e-7).
 */
double rk_erf(double x);

/**
 * Gaussian CDF at `t` for the model `(mu, sigma)`; sigma is floored to a
 * small positive value inside the library.
 */
double rk_gaussian_cdf(double t, double mu, double sigma);

/**
 * Upper tail mass at `t`: the exact complement of [`rk_gaussian_cdf`].
 */
double rk_gaussian_tail_mass(double t, double mu, double sigma);

/**
 * Fits a Gaussian model (mean, floored population standard deviation) to
 * the scores.
 *
 * # Safety
 * `scores` must point to `len` readable doubles; the out-pointers must be
 * writable.
 */
enum RkStatus rk_fit_gaussian(const double *scores, size_t len, double *out_mu, double *out_sigma);

/**
 * Builds a score set from two arrays of finite scores.
 *
 * # Safety
 * The arrays must hold the stated number of readable doubles and `out`
 * must be writable. The returned handle must be released with
 * [`rk_scoreset_free`].
 */
enum RkStatus rk_scoreset_new(const double *positives,
                              size_t positives_len,
                              const double *negatives,
                              size_t negatives_len,
                              struct RkScoreSet **out);

/**
 * Parses a `score,label` CSV document (labels `pos` / `neg`) into a score
 * set.
 *
 * # Safety
 * `text` must be a NUL-terminated UTF-8 string and `out` must be
 * writable. The returned handle must be released with
 * [`rk_scoreset_free`].
 */
enum RkStatus rk_scoreset_parse(const char *text, struct RkScoreSet **out);

/**
 * Number of positive scores in the set; 0 for a null handle.
 *
 * # Safety
 * `scores` must be null or a live handle returned by this interface.
 */
size_t rk_scoreset_positive_count(const struct RkScoreSet *scores);

/**
 * Number of negative scores in the set; 0 for a null handle.
 *
 * # Safety
 * `scores` must be null or a live handle returned by this interface.
 */
size_t rk_scoreset_negative_count(const struct RkScoreSet *scores);

/**
 * Releases a score set. Null is ignored.
 *
 * # Safety
 * `scores` must be null or an owned handle returned by this interface
 * that has not already been freed; it is invalid afterwards.
 */
void rk_scoreset_free(struct RkScoreSet *scores);

/**
 * Builds the direct (method 1) ROC curve by sweeping thresholds over
 * Gaussian models of the two score lists. Pass NaN for `sweep_lo` /
 * `sweep_hi` to derive the window from the data, and 0 for `sweep_steps`
 * to use the default of 200.
 *
 * # Safety
 * `scores` must be a live handle and `out` writable. The returned curve
 * must be released with [`rk_curve_free`].
 */
enum RkStatus rk_method1_roc(const struct RkScoreSet *scores,
                             double sweep_lo,
                             double sweep_hi,
                             size_t sweep_steps,
                             struct RkRocCurve **out);

/**
 * Trapezoid AUC of the curve; NaN for a null handle.
 *
 * # Safety
 * `curve` must be null or a live handle returned by this interface.
 */
double rk_curve_auc(const struct RkRocCurve *curve);

/**
 * Number of sampled points on the curve; 0 for a null handle.
 *
 * # Safety
 * `curve` must be null or a live handle returned by this interface.
 */
size_t rk_curve_point_count(const struct RkRocCurve *curve);

/**
 * Copies one curve point (sweep threshold, false-positive rate,
 * true-positive rate) into the out-pointers.
 *
 * # Safety
 * `curve` must be a live handle and the out-pointers writable.
 */
enum RkStatus rk_curve_point(const struct RkRocCurve *curve,
                             size_t index,
                             double *out_threshold,
                             double *out_fpr,
                             double *out_tpr);

/**
 * Releases a curve. Null is ignored.
 *
 * # Safety
 * `curve` must be null or an owned handle returned by this interface
 * that has not already been freed; it is invalid afterwards.
 */
void rk_curve_free(struct RkRocCurve *curve);

/**
 * Runs the iterative redistribution sweep (method 2): thresholds from
 * `t_init` through `t_stop` in steps of `step` (descending when
 * `descending != 0`), each iteration splitting the scores into
 * confusion-matrix holders and re-deriving a ROC curve when both derived
 * lists keep at least two elements. `conventional != 0` selects the
 * conventional holder pairing; 0 keeps the as-written pairing. Pass 0 for
 * `sweep_steps` to sample derived curves at the default resolution.
 *
 * # Safety
 * `scores` must be a live handle and `out` writable. The returned sweep
 * must be released with [`rk_sweep_free`].
 */
enum RkStatus rk_method2_sweep(const struct RkScoreSet *scores,
                               double t_init,
                               double step,
                               double t_stop,
                               uint8_t descending,
                               uint8_t conventional,
                               size_t sweep_steps,
                               struct RkSweep **out);

/**
 * Number of derived curves the sweep produced; 0 for a null handle.
 *
 * # Safety
 * `sweep` must be null or a live handle returned by this interface.
 */
size_t rk_sweep_curve_count(const struct RkSweep *sweep);

/**
 * Number of iterations the sweep recorded (including skipped ones); 0 for
 * a null handle.
 *
 * # Safety
 * `sweep` must be null or a live handle returned by this interface.
 */
size_t rk_sweep_iteration_count(const struct RkSweep *sweep);

/**
 * Copies one derived curve out of the sweep as an independent handle.
 *
 * # Safety
 * `sweep` must be a live handle and `out` writable. The returned curve is
 * owned by the caller and must be released with [`rk_curve_free`].
 */
enum RkStatus rk_sweep_curve(const struct RkSweep *sweep, size_t index, struct RkRocCurve **out);

/**
 * Copies one iteration record out of the sweep.
 *
 * # Safety
 * `sweep` must be a live handle and `out` writable.
 */
enum RkStatus rk_sweep_iteration(const struct RkSweep *sweep,
                                 size_t index,
                                 struct RkIteration *out);

/**
 * Releases a sweep. Null is ignored.
 *
 * # Safety
 * `sweep` must be null or an owned handle returned by this interface
 * that has not already been freed; it is invalid afterwards.
 */
void rk_sweep_free(struct RkSweep *sweep);

/**
 * Picks the curve farthest from chance (largest `|auc - 0.5|`, earliest
 * index on ties) out of an array of curve handles.
 *
 * # Safety
 * `curves` must point to `len` live curve handles and `out_index` must be
 * writable.
 */
enum RkStatus rk_select_best(const struct RkRocCurve *const *curves, size_t len, size_t *out_index);

/**
 * Runs knee detection over `(x, y)` points with strictly monotone x.
 * `convex != 0` selects the convex difference curve, `decreasing != 0`
 * declares y decreasing in x. A successful call with `out->found == 0`
 * means no point qualified at the given sensitivity.
 *
 * # Safety
 * `xs` and `ys` must each point to `len` readable doubles and `out` must
 * be writable.
 */
enum RkStatus rk_find_knee(const double *xs,
                           const double *ys,
                           size_t len,
                           uint8_t convex,
                           uint8_t decreasing,
                           double sensitivity,
                           struct RkKneePoint *out);

/**
 * Maps a knee on a ROC curve to the chance diagonal: perpendicular foot,
 * distance, and the maximum threshold. Knees below the diagonal are
 * rejected as invalid input.
 *
 * # Safety
 * `out` must be writable.
 */
enum RkStatus rk_knee_to_threshold(double x, double y, struct RkThreshold *out);

/**
 * Runs per-sample knee detection (method 3) on one probability vector:
 * the probabilities are sorted ascending and the knee is located on the
 * sorted sequence. `out->index` refers to positions in that sorted order.
 *
 * # Safety
 * `probs` must point to `len` readable doubles and `out` must be
 * writable.
 */
enum RkStatus rk_method3_knee(const double *probs, size_t len, struct RkKneePoint *out);

/**
 * Lists the class indices whose probability lies strictly above the knee
 * height. Requires a knee with `found != 0`. Writes the class count to
 * `out_len`; when it exceeds `capacity` the status is `BUFFER_TOO_SMALL`
 * and no indices are written (call with capacity 0 to query the size).
 *
 * # Safety
 * `probs` must point to `len` readable doubles, `knee` and `out_len` must
 * be readable/writable, and `out_indices` must hold `capacity` writable
 * entries when `capacity > 0`.
 */
enum RkStatus rk_detected_classes(const double *probs,
                                  size_t len,
                                  const struct RkKneePoint *knee,
                                  uint64_t *out_indices,
                                  size_t capacity,
                                  size_t *out_len);

/**
 * Parses a probability CSV document (`p0..p{k-1}` columns, optional
 * `labels` column) into a dataset.
 *
 * # Safety
 * `text` must be a NUL-terminated UTF-8 string and `out` must be
 * writable. The returned handle must be released with
 * [`rk_dataset_free`].
 */
enum RkStatus rk_dataset_parse(const char *text, struct RkDataset **out);

/**
 * Generates the deterministic synthetic dataset: `sample_count` rows over
 * `class_count` classes, a `high_prob_fraction` share of samples carrying
 * one dominant class among the first `active_classes`, identical output
 * for identical arguments.
 *
 * # Safety
 * `out` must be writable. The returned handle must be released with
 * [`rk_dataset_free`].
 */
enum RkStatus rk_dataset_generate(size_t sample_count,
                                  size_t class_count,
                                  size_t active_classes,
                                  double high_prob_fraction,
                                  double noise_scale,
                                  uint64_t seed,
                                  struct RkDataset **out);

/**
 * Number of samples in the dataset; 0 for a null handle.
 *
 * # Safety
 * `dataset` must be null or a live handle returned by this interface.
 */
size_t rk_dataset_sample_count(const struct RkDataset *dataset);

/**
 * Number of classes per sample; 0 for a null handle.
 *
 * # Safety
 * `dataset` must be null or a live handle returned by this interface.
 */
size_t rk_dataset_class_count(const struct RkDataset *dataset);

/**
 * Serializes the dataset to its canonical CSV form, NUL-terminated.
 * Writes the required buffer size (including the terminator) to
 * `out_len`; when it exceeds `capacity` the status is `BUFFER_TOO_SMALL`
 * and nothing is copied (call with capacity 0 to query the size).
 *
 * # Safety
 * `dataset` must be a live handle, `out_len` writable, and `buf` must
 * hold `capacity` writable bytes when `capacity > 0`.
 */
enum RkStatus rk_dataset_format(const struct RkDataset *dataset,
                                char *buf,
                                size_t capacity,
                                size_t *out_len);

/**
 * Computes aggregate knee statistics over every sample in the dataset:
 * how many reach `prob_cutoff`, and how many of those knee inside
 * `[knee_lo, knee_hi]` on the sorted probability axis.
 *
 * # Safety
 * `dataset` must be a live handle and `out` must be writable.
 */
enum RkStatus rk_dataset_knee_statistics(const struct RkDataset *dataset,
                                         double prob_cutoff,
                                         uint64_t knee_lo,
                                         uint64_t knee_hi,
                                         struct RkKneeStats *out);

/**
 * Releases a dataset. Null is ignored.
 *
 * # Safety
 * `dataset` must be null or an owned handle returned by this interface
 * that has not already been freed; it is invalid afterwards.
 */
void rk_dataset_free(struct RkDataset *dataset);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ROCKNEE_H */
