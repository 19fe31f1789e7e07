"""Embedded fixture catalog data (generated by tools/build_fixtures.py)."""

FIXTURES = {'10_2_16': {'expected': {'chi': 2, 'n_double_points': 8, 'n_regions': 10, 'n_strands': 2},
             'labels': {},
             'orientation': [1, 9],
             'sigma': [[1, 11, -2, -12],
                       [-1, 12, 8, -13],
                       [2, -6, -3, 5],
                       [3, 15, -4, -16],
                       [4, -9, -5, 16],
                       [6, 14, -7, -15],
                       [7, -10, -8, 9],
                       [10, -14, -11, 13]]},
 '9_1_5': {'expected': {'chi': 2,
                        'formula_clauses': [['1'],
                                            ['4'],
                                            ['2', '3'],
                                            ['3', '8'],
                                            ['2', '6', '7'],
                                            ['5', '6', '8']],
                        'n_double_points': 7,
                        'n_minimal': 5,
                        'n_optimal': 2,
                        'n_regions': 9,
                        'n_strands': 1,
                        'pinning_number': 4},
           'labels': {0: '9', 1: '1', 2: '2', 3: '3', 4: '6', 5: '8', 6: '7', 7: '4', 8: '5'},
           'orientation': [1],
           'sigma': [[1, -9, -2, 8],
                     [-1, -8, 14, 7],
                     [2, 13, -3, -14],
                     [3, 6, -4, -7],
                     [4, 11, -5, -12],
                     [5, -11, -6, 10],
                     [9, 12, -10, -13]]},
 'fig8': {'expected': {'chi': 2,
                       'n_double_points': 1,
                       'n_regions': 3,
                       'n_strands': 1,
                       'pinning_number': 2},
          'labels': {0: 'outer', 1: 'lobe1', 2: 'lobe2'},
          'orientation': [1],
          'sigma': [[1, 2, -2, -1]]},
 'trefoil': {'expected': {'chi': 2,
                          'commutator_pins': [1, 2, 4],
                          'n_double_points': 3,
                          'n_regions': 5,
                          'n_strands': 1},
             'labels': {1: '0', 2: '1', 4: 'inf'},
             'orientation': [1],
             'sigma': [[1, -5, -2, 4], [-1, -4, 6, 3], [2, 5, -3, -6]]},
 'two_circles': {'expected': {'chi': 2, 'n_double_points': 2, 'n_regions': 4, 'n_strands': 2},
                 'labels': {},
                 'orientation': [1, 3],
                 'sigma': [[1, 3, -2, -4], [-1, 4, 2, -3]]},
 'weak_bigon': {'expected': {'chi': 2, 'n_double_points': 2, 'n_regions': 4, 'n_strands': 1},
                'labels': {},
                'orientation': [1],
                'sigma': [[1, -3, -2, 2], [-1, -4, 4, 3]]},
 'worked16': {'expected': {'chi': 2,
                           'degree_multiset': [2, 2, 3, 3, 3, 3, 3, 4, 4, 5],
                           'n_double_points': 8,
                           'n_regions': 10,
                           'n_strands': 2,
                           'sigma_all': 8,
                           'sigma_labeled_pins': 4},
              'labels': {1: 'r', 7: 'p2', 9: 'p1'},
              'orientation': [1, 9],
              'sigma': [[1, 16, -2, -9],
                        [-1, 9, 8, -10],
                        [2, -6, -3, 5],
                        [3, 12, -4, -13],
                        [4, -14, -5, 13],
                        [6, 11, -7, -12],
                        [7, -15, -8, 14],
                        [10, 15, -11, -16]]}}
