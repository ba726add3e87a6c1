#include <stdio.h>
#include "cubepath.h"

int main(void) {
    const int64_t ring[24] = {0, 0, 0, 1, 0, 0, 2, 0, 0, 2, 1, 0,
                              2, 2, 0, 1, 2, 0, 0, 2, 0, 0, 1, 0};
    CpCurve *curve = NULL;
    CpPath *path = NULL;
    double xyz[3 * 16];

    if (cp_curve_new(ring, 8, &curve) != CP_STATUS_OK) {
        printf("curve: %s\n", cp_last_error());
        return 1;
    }
    if (cp_solve(curve, CP_VARIANT_EDGE, 1e-10, &path) != CP_STATUS_OK) {
        printf("solve: %s\n", cp_last_error());
        return 1;
    }
    if (cp_path_vertices(path, xyz, 3 * 16) != CP_STATUS_OK) {
        return 1;
    }
    printf("length=%.9f vertices=%zu first=(%g,%g,%g)\n", cp_path_length(path),
           cp_path_vertex_count(path), xyz[0], xyz[1], xyz[2]);
    cp_path_free(path);

    if (cp_solve(curve, CP_VARIANT_EDGE, 0.0, &path) != CP_STATUS_INVALID_ARGUMENT) {
        return 1;
    }
    printf("error=%s\n", cp_last_error());
    cp_curve_free(curve);
    return 0;
}
