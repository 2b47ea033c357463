/** Workbench bootstrap: wires DOM events to the store with debounced
 * commits and re-renders on every committed generation. */

import { HttpApi } from './api.js';
import { WorkbenchStore, debounce } from './state.js';
import { renderView } from './render.js';
import type { ProblemDocument } from './types.js';

const EDIT_DEBOUNCE_MS = 150;

const EXAMPLE_DOCUMENT: ProblemDocument = {
  criteria: ['c1', 'c2'],
  alternatives: ['a1', 'a2', 'a3', 'a4', 'a5'],
  judges: [
    [2, 1],
    [1, 1],
    [1, 2],
  ],
  evaluations: [
    [1, 5],
    [2, 3],
    [3, 2],
    [5, 1],
    [5, 5],
  ],
};

function start(): void {
  const root = document.body;
  const api = new HttpApi('');
  const store = new WorkbenchStore(api);
  store.subscribe(() => renderView(root, store.state, store.lastError));

  const swallow = (promise: Promise<void>) => {
    promise.catch(() => {
      // Rejected edits surface through the error toast; the prior view stays.
      renderView(root, store.state, store.lastError);
    });
  };

  const documentInput = root.querySelector<HTMLTextAreaElement>('#problem-input');
  if (documentInput) documentInput.value = JSON.stringify(EXAMPLE_DOCUMENT, null, 2);

  root.querySelector<HTMLButtonElement>('#load-button')?.addEventListener('click', () => {
    if (!documentInput) return;
    let doc: ProblemDocument;
    try {
      doc = JSON.parse(documentInput.value) as ProblemDocument;
    } catch (err) {
      renderView(root, store.state, `problem document is not valid JSON: ${err}`);
      return;
    }
    swallow(store.loadSession(doc));
  });

  const debouncedP = debounce((p: number) => {
    swallow(store.applyEdit({ kind: 'set_p', p }));
  }, EDIT_DEBOUNCE_MS);
  root.querySelector<HTMLInputElement>('#p-slider')?.addEventListener('input', (event) => {
    debouncedP(Number((event.target as HTMLInputElement).value));
  });

  const debouncedWeight = debounce((judge: number, criterion: number, value: number) => {
    swallow(store.applyEdit({ kind: 'set_weight', judge, criterion, value }));
  }, EDIT_DEBOUNCE_MS);

  root.querySelector<HTMLElement>('#judge-editor')?.addEventListener('input', (event) => {
    const target = event.target as HTMLInputElement;
    if (!target.classList.contains('weight-cell')) return;
    debouncedWeight(
      Number(target.dataset.judge),
      Number(target.dataset.criterion),
      Number(target.value),
    );
  });

  root.querySelector<HTMLElement>('#judge-editor')?.addEventListener('click', (event) => {
    const target = event.target as HTMLElement;
    if (!target.classList.contains('remove-judge')) return;
    swallow(store.applyEdit({ kind: 'remove_judge', judge: Number(target.dataset.judge) }));
  });

  root.querySelector<HTMLButtonElement>('#add-judge')?.addEventListener('click', () => {
    const d = store.state?.summary.d ?? 2;
    swallow(store.applyEdit({ kind: 'add_judge', weights: Array(d).fill(1) }));
  });
}

if (typeof document !== 'undefined') {
  document.addEventListener('DOMContentLoaded', start);
}
