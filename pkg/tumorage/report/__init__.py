from .model_curve import model_cdf_curve, write_cdf_curve_csv
from .pipeline import age_table_pipeline
from .published import PUBLISHED_AGE_TABLE, compare_with_published, write_comparison_csv
from .query import AgeQueryResult, query_age, row_percentiles
from .sensitivity import SensitivityReport, sensitivity_sweep
from .size_given_age import size_given_age, write_size_given_age_csv

__all__ = [
    'model_cdf_curve', 'write_cdf_curve_csv', 'age_table_pipeline', 'PUBLISHED_AGE_TABLE', 'compare_with_published',
    'write_comparison_csv', 'AgeQueryResult', 'query_age', 'row_percentiles', 'SensitivityReport',
    'sensitivity_sweep', 'size_given_age', 'write_size_given_age_csv'
]
