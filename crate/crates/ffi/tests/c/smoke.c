#include <math.h>
#include <stdio.h>
#include "evac.h"

int main(void) {
    EvacStrategy *st = NULL;
    if (evac_strategy_new_half_chord(4.0, &st) != EVAC_STATUS_OK) return 1;
    EvacWorstCase w;
    if (evac_worst_case(st, 6.283185307179586 / 1e4, 1e-8, &w) != EVAC_STATUS_OK) return 2;
    double ub;
    if (evac_ub_half_chord(4.0, &ub) != EVAC_STATUS_OK) return 3;
    evac_strategy_free(st);
    if (fabs(w.evac_time - ub) > 1e-6) return 4;
    if (evac_strategy_new_bsp(-1.0, &st) != EVAC_STATUS_DOMAIN || st != NULL) return 5;
    if (evac_last_error() == NULL) return 6;
    printf("%.6f\n", w.evac_time);
    return 0;
}
