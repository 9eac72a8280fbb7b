#ifndef GLOBHOM_H
#define GLOBHOM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes. The first four agree with the CLI exit codes.
typedef enum GlobhomStatus {
  GLOBHOM_STATUS_OK = 0,
  GLOBHOM_STATUS_VIOLATION = 1,
  GLOBHOM_STATUS_INPUT_ERROR = 2,
  GLOBHOM_STATUS_RESOURCE_CAP = 3,
  GLOBHOM_STATUS_NULL_ARGUMENT = 4,
  GLOBHOM_STATUS_PANIC = 5,
} GlobhomStatus;

// Homology theories, in the order of the CLI `--theory` values.
typedef enum GlobhomTheory {
  GLOBHOM_THEORY_GL = 0,
  GLOBHOM_THEORY_MINUS = 1,
  GLOBHOM_THEORY_PLUS = 2,
  GLOBHOM_THEORY_OLD_GL = 3,
  GLOBHOM_THEORY_FORMAL_GL = 4,
  GLOBHOM_THEORY_FORMAL_MINUS = 5,
  GLOBHOM_THEORY_FORMAL_PLUS = 6,
  GLOBHOM_THEORY_REDUCED_GL = 7,
  GLOBHOM_THEORY_REDUCED_MINUS = 8,
  GLOBHOM_THEORY_REDUCED_PLUS = 9,
} GlobhomTheory;

// A finite strict ω-category.
typedef struct GlobhomCategory GlobhomCategory;

// A chain complex of one theory, ready for homology queries.
typedef struct GlobhomComplex GlobhomComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null. The pointer
// stays valid until the next failing call on the same thread.
const char *globhom_last_error(void);

// Parses and builds a JSON document. `element_cap == 0` selects the default.
//
// # Safety
// `document` must be a nul-terminated string and `out` a valid pointer.
enum GlobhomStatus globhom_category_load(const char *document,
                                         size_t element_cap,
                                         struct GlobhomCategory **out);

// # Safety
// `cat` must come from [`globhom_category_load`] and not be freed twice.
void globhom_category_free(struct GlobhomCategory *cat);

// Number of `dim`-dimensional morphisms; 0 for a null handle.
//
// # Safety
// `cat` must be null or a live handle.
size_t globhom_category_count(const struct GlobhomCategory *cat, size_t dim);

// Highest dimension of a morphism; 0 for a null handle.
//
// # Safety
// `cat` must be null or a live handle.
size_t globhom_category_max_dim(const struct GlobhomCategory *cat);

// Builds the complex of `theory`. Nerve theories are truncated at
// `truncation` with at most `cap` simplexes per nerve (0: default).
//
// # Safety
// `cat` must be a live handle and `out` a valid pointer.
enum GlobhomStatus globhom_complex_new(const struct GlobhomCategory *cat,
                                       enum GlobhomTheory theory,
                                       size_t truncation,
                                       size_t cap,
                                       struct GlobhomComplex **out);

// # Safety
// `complex` must come from [`globhom_complex_new`] and not be freed twice.
void globhom_complex_free(struct GlobhomComplex *complex);

// `H_p` in theory degree `p`: writes the free rank and the number of
// torsion factors. Degrees past the truncation are an input error.
//
// # Safety
// `complex` must be a live handle; `rank` and `torsion_count` valid pointers.
enum GlobhomStatus globhom_homology(const struct GlobhomComplex *complex,
                                    int64_t p,
                                    size_t *rank,
                                    size_t *torsion_count);

// `H_p` as text such as `Z^2 + Z/2`. Release with [`globhom_string_free`].
//
// # Safety
// `complex` must be a live handle and `out` a valid pointer.
enum GlobhomStatus globhom_homology_string(const struct GlobhomComplex *complex,
                                           int64_t p,
                                           char **out);

// Runs the command line `argv[0..argc]` (program name first) and stores
// the report in `report`. Returns the CLI exit code, or -1 on bad arguments.
//
// # Safety
// `argv` must hold `argc` nul-terminated strings; `report` must be valid.
int globhom_run(int argc, const char *const *argv, char **report);

// # Safety
// `s` must come from this library and not be freed twice.
void globhom_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GLOBHOM_H */
