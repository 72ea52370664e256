#include <stdio.h>
#include <string.h>
#include "twisted_degree.h"

int main(void) {
    TdEngine *e = NULL;
    if (td_engine_new("d4xz2", &e) != TD_STATUS_OK) return 1;
    uintptr_t n = 0;
    if (td_engine_class_count(e, &n) != TD_STATUS_OK || n != 27) return 2;
    if (td_mode_class_count(e, 0, &n) != TD_STATUS_OK || n != 118) return 3;
    char *json = NULL;
    if (td_basic_degree_json(e, "V1[D4]", 1, &json) != TD_STATUS_OK || strstr(json, "\"schema_version\":1") == NULL) return 4;
    td_string_free(json);
    if (td_basic_degree_json(e, "nope", 1, &json) != TD_STATUS_INVALID_ARGUMENT) return 5;
    char *msg = td_last_error();
    if (msg == NULL) return 6;
    td_string_free(msg);
    td_engine_free(e);
    puts("ok");
    return 0;
}
